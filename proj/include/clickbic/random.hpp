#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace clickbic {

using Rng = std::mt19937_64;

/// Expands a base seed and a stream tag into an independent 64-bit seed.
/// std::seed_seq's mixing is fully specified, so this is portable.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint32_t> tags) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(base),
                                   static_cast<std::uint32_t>(base >> 32)};
  words.insert(words.end(), tags.begin(), tags.end());
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound). `bound` must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

}  // namespace clickbic
