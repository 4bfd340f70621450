#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdeslab/errors.hpp"

namespace sdeslab {

// A fixed-width bit string of up to 16 bits, packed into an integer.
// Bit positions are 1-based and count from the left, so bit 1 is the most
// significant bit of the packed value. Serialized form is an ASCII string
// of '0'/'1' with the leftmost character being bit 1.
class Bits {
 public:
  constexpr Bits() = default;

  constexpr Bits(std::uint16_t value, int width) : value_(value), width_(width) {
    if (width < 0 || width > 16) throw InvalidArgument("bit width out of range");
    if (width < 16 && (value >> width) != 0)
      throw InvalidArgument("packed value wider than declared width");
  }

  static Bits parse(std::string_view text) {
    if (text.empty() || text.size() > 16)
      throw InvalidArgument("bit string must have 1..16 characters, got \"" +
                            std::string(text) + "\"");
    std::uint16_t v = 0;
    for (char c : text) {
      if (c != '0' && c != '1')
        throw InvalidArgument("bit string may contain only '0' and '1', got \"" +
                              std::string(text) + "\"");
      v = static_cast<std::uint16_t>((v << 1) | (c == '1'));
    }
    return Bits(v, static_cast<int>(text.size()));
  }

  constexpr std::uint16_t value() const { return value_; }
  constexpr int width() const { return width_; }

  // 1-based, leftmost position first.
  constexpr int bit(int pos) const {
    check_pos(pos);
    return (value_ >> (width_ - pos)) & 1;
  }

  constexpr Bits flipped(int pos) const {
    check_pos(pos);
    return Bits(static_cast<std::uint16_t>(value_ ^ (1u << (width_ - pos))), width_);
  }

  constexpr Bits operator^(Bits other) const {
    if (other.width_ != width_) throw InvalidArgument("xor of mismatched widths");
    return Bits(static_cast<std::uint16_t>(value_ ^ other.value_), width_);
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(width_), '0');
    for (int i = 0; i < width_; ++i)
      if ((value_ >> (width_ - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  friend constexpr bool operator==(Bits, Bits) = default;

 private:
  constexpr void check_pos(int pos) const {
    if (pos < 1 || pos > width_) throw InvalidArgument("bit position out of range");
  }

  std::uint16_t value_ = 0;
  int width_ = 0;
};

// The 10-bit SDES key. The search space is the 1024 packed values.
class SdesKey {
 public:
  static constexpr int kBits = 10;

  constexpr SdesKey() = default;
  constexpr explicit SdesKey(std::uint16_t packed) : bits_(packed, kBits) {}

  static SdesKey parse(std::string_view text) {
    Bits b = Bits::parse(text);
    if (b.width() != kBits)
      throw InvalidArgument("key must have exactly 10 bits, got " +
                            std::to_string(b.width()));
    return SdesKey(b.value());
  }

  constexpr std::uint16_t packed() const { return bits_.value(); }
  constexpr int bit(int pos) const { return bits_.bit(pos); }
  constexpr SdesKey flipped(int pos) const { return SdesKey(bits_.flipped(pos).value()); }
  constexpr Bits bits() const { return bits_; }
  std::string str() const { return bits_.str(); }

  friend constexpr bool operator==(SdesKey, SdesKey) = default;
  friend constexpr auto operator<=>(SdesKey a, SdesKey b) {
    return a.packed() <=> b.packed();
  }

 private:
  Bits bits_{0, kBits};
};

// An 8-bit plaintext/ciphertext block.
class Block {
 public:
  static constexpr int kBits = 8;

  constexpr Block() = default;
  constexpr explicit Block(std::uint8_t packed) : bits_(packed, kBits) {}

  static Block parse(std::string_view text) {
    Bits b = Bits::parse(text);
    if (b.width() != kBits)
      throw InvalidArgument("block must have exactly 8 bits, got " +
                            std::to_string(b.width()));
    return Block(static_cast<std::uint8_t>(b.value()));
  }

  constexpr std::uint8_t packed() const { return static_cast<std::uint8_t>(bits_.value()); }
  constexpr int bit(int pos) const { return bits_.bit(pos); }
  constexpr Bits bits() const { return bits_; }
  std::string str() const { return bits_.str(); }

  friend constexpr bool operator==(Block, Block) = default;

 private:
  Bits bits_{0, kBits};
};

}  // namespace sdeslab
