#pragma once

#include <bit>
#include <cstdint>

namespace hardcore {

// SplitMix64: counter-based 64-bit generator (Steele, Lea, Flood 2014).
// Pure integer arithmetic, so trajectories are bit-identical across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1) with 53 random bits
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // unbiased uniform in [0,n) by masked rejection
  int next_below(int n) {
    std::uint64_t mask =
        n <= 1 ? 0 : (~std::uint64_t{0} >> (64 - std::bit_width(static_cast<std::uint64_t>(n) - 1)));
    for (;;) {
      std::uint64_t r = next() & mask;
      if (r < static_cast<std::uint64_t>(n)) return static_cast<int>(r);
    }
  }
};

// Per-chain seed derivation: chains indexed under one experiment seed get
// decorrelated streams deterministically.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 s(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  return s.next();
}

}  // namespace hardcore
