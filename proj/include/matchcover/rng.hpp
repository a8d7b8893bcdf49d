#pragma once

// Seeded, platform-independent randomness. mt19937_64 output is pinned by
// the standard and the bounded sampler below uses plain rejection, so a
// given seed reproduces the same draws on every platform.

#include <cstdint>
#include <random>

namespace matchcover {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic per-shard substream: shard i of a run seeded with `master`
// always sees the same stream, independent of worker scheduling.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Uniform draw from {0, ..., bound-1} by rejection; avoids the
// implementation-defined std::uniform_int_distribution.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // bound == 0 is a caller bug; mask it to 1 rather than divide by zero.
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

inline bool coin_flip(Rng& rng) { return uniform_below(rng, 2) == 1; }

}  // namespace matchcover
