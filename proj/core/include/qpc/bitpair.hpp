#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpc {

/// Two classical bits. The first bit is the one written first ("10" has
/// first = 1, second = 0); XOR acts componentwise.
struct BitPair {
  int first = 0;
  int second = 0;

  constexpr BitPair() = default;
  constexpr BitPair(int f, int s) : first(f), second(s) {}

  friend constexpr BitPair operator^(BitPair a, BitPair b) {
    return {a.first ^ b.first, a.second ^ b.second};
  }
  friend constexpr bool operator==(BitPair a, BitPair b) {
    return a.first == b.first && a.second == b.second;
  }

  constexpr bool is_zero() const { return first == 0 && second == 0; }

  /// 0..3 with the first bit most significant.
  constexpr int index() const { return (first << 1) | second; }
  static constexpr BitPair from_index(int v) { return {(v >> 1) & 1, v & 1}; }

  std::string to_string() const {
    return std::string{char('0' + first), char('0' + second)};
  }
};

/// An N-bit secret split into two-bit groups. Bit j (1-based) carries weight
/// 2^(j-1); group i holds (bit_{2i-1}, bit_{2i}); odd N pads the final group
/// with a trailing 0.
struct GroupedSecret {
  int n_bits = 0;
  std::uint64_t value = 0;
  std::vector<BitPair> groups;

  static GroupedSecret from_value(std::uint64_t value, int n_bits) {
    if (n_bits < 1 || n_bits > 64) {
      throw std::invalid_argument("secret width must be 1..64 bits");
    }
    if (n_bits < 64 && (value >> n_bits) != 0) {
      throw std::invalid_argument("secret does not fit in the stated width");
    }
    std::vector<int> bits(static_cast<std::size_t>(n_bits));
    for (int j = 1; j <= n_bits; ++j) {
      bits[static_cast<std::size_t>(j - 1)] =
          static_cast<int>((value >> (j - 1)) & 1u);
    }
    GroupedSecret out;
    out.n_bits = n_bits;
    out.value = value;
    out.groups = bits_to_groups(bits);
    return out;
  }

  static std::vector<BitPair> bits_to_groups(const std::vector<int>& bits) {
    if (bits.empty()) throw std::invalid_argument("empty bit sequence");
    std::vector<BitPair> groups;
    groups.reserve((bits.size() + 1) / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
      int hi = bits[i];
      int lo = (i + 1 < bits.size()) ? bits[i + 1] : 0;
      groups.emplace_back(hi, lo);
    }
    return groups;
  }

  std::size_t group_count() const { return groups.size(); }
};

inline std::size_t group_count_for(int n_bits) {
  return static_cast<std::size_t>((n_bits + 1) / 2);
}

}  // namespace qpc
