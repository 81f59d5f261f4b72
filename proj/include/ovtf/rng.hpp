// ovtf/rng.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_RNG_HPP
#define OVTF_RNG_HPP

#include <cstdint>
#include <random>

namespace ovtf {

// Draws on top of std::mt19937_64. The engine output sequence is pinned by
// the standard; the standard distributions are not, so seeded results stay
// reproducible across toolchains only when sampled by hand.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), unbiased via rejection. n must be positive.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t rem = (std::uint64_t(0) - n) % n;  // 2^64 mod n
  std::uint64_t x = rng();
  while (rem != 0 && x >= std::uint64_t(0) - rem) x = rng();
  return x % n;
}

}  // namespace ovtf

#endif  // OVTF_RNG_HPP
