#pragma once

#include <cstdint>

namespace qpc {

/// Counter-based deterministic random stream (SplitMix64 over an advancing
/// counter). One stream serves a whole session; every Born-rule sample and
/// classical coin draws from it in the order documented in session.hpp, so a
/// seed fully determines a run.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint32_t next_below(std::uint32_t bound) {
    // multiply-shift; bias is O(2^-64), irrelevant at Monte Carlo scale
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  int next_bit() { return static_cast<int>(next_below(2)); }

  std::uint64_t seed() const { return seed_; }

  /// Seed for an independent child stream (per-trial fan-out).
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  RandomStream derive(std::uint64_t index) const {
    return RandomStream(derive_seed(seed_, index));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace qpc
