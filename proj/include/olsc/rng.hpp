#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace olsc {

using Rng = std::mt19937_64;

// Uniform double in [0,1) from the top 53 bits of the generator output.
// Bypasses std::uniform_real_distribution so that seeded runs reproduce
// bit-identically across standard-library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r = rng();
  while (r >= bound) r = rng();
  return static_cast<std::size_t>(r % n);
}

// Draw an index proportionally to the (non-negative) weights. `total` must be
// the exact sum the caller wants to normalize by; the last positive weight
// absorbs rounding slack.
inline std::size_t sample_weighted(std::span<const double> weights, double total, Rng& rng) {
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace olsc
