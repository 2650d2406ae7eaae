#pragma once

#include <cstdint>

#include "lsap/types.hpp"

namespace lsap {

// splitmix64. Pinned so that instances and initial solutions are
// reproducible across platforms and releases.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// The splitmix64 finalizer on its own; used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Maps a 64-bit draw onto [0, 1] by dividing by 2^64 - 1.
inline double unit_double(std::uint64_t u) {
  return static_cast<double>(u) / 18446744073709551615.0;
}

// Uniform permutation of {0..n-1} via Fisher-Yates over a splitmix64 stream.
inline Perm random_perm(std::int32_t n, std::uint64_t seed) {
  Perm p(n);
  for (std::int32_t i = 0; i < n; ++i) p[i] = i;
  SplitMix64 rng(seed);
  for (std::int32_t i = n - 1; i > 0; --i) {
    std::int32_t j = static_cast<std::int32_t>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace lsap
