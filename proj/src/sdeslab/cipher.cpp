#include "sdeslab/cipher.hpp"

namespace sdeslab {

const PermutationTable& table_p10() {
  static const PermutationTable t{10, {3, 5, 2, 7, 4, 10, 1, 9, 8, 6}};
  return t;
}

const PermutationTable& table_p8() {
  static const PermutationTable t{10, {6, 3, 7, 4, 8, 5, 10, 9}};
  return t;
}

const PermutationTable& table_ip() {
  static const PermutationTable t{8, {2, 6, 3, 1, 4, 8, 5, 7}};
  return t;
}

const PermutationTable& table_ip_inv() {
  static const PermutationTable t{8, {4, 1, 3, 5, 7, 2, 8, 6}};
  return t;
}

const PermutationTable& table_ep() {
  static const PermutationTable t{4, {4, 1, 2, 3, 2, 3, 4, 1}};
  return t;
}

const PermutationTable& table_p4() {
  static const PermutationTable t{4, {2, 4, 3, 1}};
  return t;
}

const SBox& sbox_s0() {
  static const SBox s{{{{1, 0, 3, 2},
                        {3, 2, 1, 0},
                        {0, 2, 1, 3},
                        {3, 1, 3, 2}}}};
  return s;
}

const SBox& sbox_s1() {
  static const SBox s{{{{0, 1, 2, 3},
                        {2, 0, 1, 3},
                        {3, 0, 1, 0},
                        {2, 1, 0, 3}}}};
  return s;
}

Bits permute(Bits input, const PermutationTable& table) {
  if (input.width() != table.input_width)
    throw InvalidArgument("permute: input has " + std::to_string(input.width()) +
                          " bits, table expects " + std::to_string(table.input_width));
  std::uint16_t out = 0;
  for (int e : table.entries) out = static_cast<std::uint16_t>((out << 1) | input.bit(e));
  return Bits(out, static_cast<int>(table.entries.size()));
}

namespace {

// Circular left shift of both 5-bit halves of a 10-bit word.
Bits shift_halves(Bits word, int n) {
  auto rot5 = [n](std::uint16_t h) {
    return static_cast<std::uint16_t>(((h << n) | (h >> (5 - n))) & 0x1f);
  };
  std::uint16_t left = static_cast<std::uint16_t>(word.value() >> 5);
  std::uint16_t right = static_cast<std::uint16_t>(word.value() & 0x1f);
  return Bits(static_cast<std::uint16_t>((rot5(left) << 5) | rot5(right)), 10);
}

}  // namespace

SubKeys key_schedule(SdesKey key) {
  Bits p = permute(key.bits(), table_p10());
  Bits ls1 = shift_halves(p, 1);
  Bits ls3 = shift_halves(ls1, 2);
  return SubKeys{permute(ls1, table_p8()), permute(ls3, table_p8())};
}

Bits sbox_lookup(Bits nibble, const SBox& box) {
  if (nibble.width() != 4) throw InvalidArgument("sbox_lookup: input must have 4 bits");
  int row = (nibble.bit(1) << 1) | nibble.bit(4);
  int col = (nibble.bit(2) << 1) | nibble.bit(3);
  return Bits(box.grid[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], 2);
}

Bits round_f(Bits r, Bits subkey) {
  if (r.width() != 4 || subkey.width() != 8)
    throw InvalidArgument("round_f: expected widths 4 and 8");
  Bits x = permute(r, table_ep()) ^ subkey;
  Bits left(static_cast<std::uint16_t>(x.value() >> 4), 4);
  Bits right(static_cast<std::uint16_t>(x.value() & 0xf), 4);
  Bits s = Bits(static_cast<std::uint16_t>((sbox_lookup(left, sbox_s0()).value() << 2) |
                                           sbox_lookup(right, sbox_s1()).value()),
                4);
  return permute(s, table_p4());
}

Block fk(Block block, Bits subkey) {
  std::uint8_t left = static_cast<std::uint8_t>(block.packed() >> 4);
  std::uint8_t right = static_cast<std::uint8_t>(block.packed() & 0xf);
  std::uint8_t f = static_cast<std::uint8_t>(round_f(Bits(right, 4), subkey).value());
  return Block(static_cast<std::uint8_t>(((left ^ f) << 4) | right));
}

Block switch_halves(Block block) {
  return Block(static_cast<std::uint8_t>((block.packed() << 4) | (block.packed() >> 4)));
}

Block encrypt_block(Block plain, const SubKeys& keys) {
  Bits ip = permute(plain.bits(), table_ip());
  Block b = fk(Block(static_cast<std::uint8_t>(ip.value())), keys.k1);
  b = fk(switch_halves(b), keys.k2);
  return Block(static_cast<std::uint8_t>(permute(b.bits(), table_ip_inv()).value()));
}

Block encrypt_block(Block plain, SdesKey key) {
  return encrypt_block(plain, key_schedule(key));
}

Block decrypt_block(Block cipher, const SubKeys& keys) {
  Bits ip = permute(cipher.bits(), table_ip());
  Block b = fk(Block(static_cast<std::uint8_t>(ip.value())), keys.k2);
  b = fk(switch_halves(b), keys.k1);
  return Block(static_cast<std::uint8_t>(permute(b.bits(), table_ip_inv()).value()));
}

Block decrypt_block(Block cipher, SdesKey key) {
  return decrypt_block(cipher, key_schedule(key));
}

std::vector<std::uint8_t> encrypt_bytes(std::span<const std::uint8_t> plain, SdesKey key) {
  SubKeys keys = key_schedule(key);
  std::vector<std::uint8_t> out(plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i)
    out[i] = encrypt_block(Block(plain[i]), keys).packed();
  return out;
}

std::vector<std::uint8_t> decrypt_bytes(std::span<const std::uint8_t> cipher, SdesKey key) {
  SubKeys keys = key_schedule(key);
  std::vector<std::uint8_t> out(cipher.size());
  for (std::size_t i = 0; i < cipher.size(); ++i)
    out[i] = decrypt_block(Block(cipher[i]), keys).packed();
  return out;
}

const Codebook& decrypt_codebook() {
  static const Codebook book = [] {
    Codebook b{};
    for (unsigned k = 0; k < 1024; ++k) {
      SubKeys keys = key_schedule(SdesKey(static_cast<std::uint16_t>(k)));
      for (unsigned c = 0; c < 256; ++c)
        b[k][c] = decrypt_block(Block(static_cast<std::uint8_t>(c)), keys).packed();
    }
    return b;
  }();
  return book;
}

}  // namespace sdeslab
