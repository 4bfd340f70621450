#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sdeslab/bits.hpp"

namespace sdeslab {

// A permutation/selection table. Entries are 1-based source positions into
// an input of input_width bits; the output has entries.size() bits. Entries
// may repeat (E/P expands 4 bits to 8).
struct PermutationTable {
  int input_width;
  std::vector<int> entries;

  bool valid() const {
    if (input_width < 1 || input_width > 16) return false;
    for (int e : entries)
      if (e < 1 || e > input_width) return false;
    return !entries.empty();
  }
};

// A 4x4 substitution box of 2-bit values. Row is selected by input bits
// (1,4), column by bits (2,3).
struct SBox {
  std::array<std::array<std::uint8_t, 4>, 4> grid;
};

// The SDES tables, stored exactly as printed.
const PermutationTable& table_p10();
const PermutationTable& table_p8();
const PermutationTable& table_ip();
const PermutationTable& table_ip_inv();
const PermutationTable& table_ep();
const PermutationTable& table_p4();
const SBox& sbox_s0();
const SBox& sbox_s1();

// The two 8-bit round subkeys derived from a 10-bit key.
struct SubKeys {
  Bits k1{0, 8};
  Bits k2{0, 8};

  friend bool operator==(const SubKeys&, const SubKeys&) = default;
};

// output[i] = input[table.entries[i]]. Throws InvalidArgument when the
// input width does not match the table's declared width.
Bits permute(Bits input, const PermutationTable& table);

// K1 = P8(LS-1(P10(key))), K2 = P8(LS-2(LS-1(P10(key)))); the circular left
// shifts act on the two 5-bit halves independently.
SubKeys key_schedule(SdesKey key);

// 4-bit input, 2-bit output; row = (bit1,bit4), column = (bit2,bit3),
// both read as base-2 numbers, output written most significant bit first.
Bits sbox_lookup(Bits nibble, const SBox& box);

// f(R, subkey) = P4( S0(left nibble) || S1(right nibble) ) of E/P(R) xor subkey.
Bits round_f(Bits r, Bits subkey);

// fK(L, R) = (L xor f(R, subkey), R).
Block fk(Block block, Bits subkey);

// (L, R) -> (R, L).
Block switch_halves(Block block);

// IP^-1( fK_K2( SW( fK_K1( IP(plain) ) ) ) ).
Block encrypt_block(Block plain, const SubKeys& keys);
Block encrypt_block(Block plain, SdesKey key);

// Same chain with the subkey order reversed.
Block decrypt_block(Block cipher, const SubKeys& keys);
Block decrypt_block(Block cipher, SdesKey key);

// ECB over bytes: each byte is one independently encrypted block.
std::vector<std::uint8_t> encrypt_bytes(std::span<const std::uint8_t> plain, SdesKey key);
std::vector<std::uint8_t> decrypt_bytes(std::span<const std::uint8_t> cipher, SdesKey key);

// Decryptions of every byte value under every key, indexed [key][byte].
// Built once on first use; read-only afterwards.
using Codebook = std::array<std::array<std::uint8_t, 256>, 1024>;
const Codebook& decrypt_codebook();

}  // namespace sdeslab
