#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ardfds {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for batch element `index` of iteration `iteration` under `base`.
/// Depends only on its arguments, so it is the same for any worker count.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t iteration,
                                    std::uint64_t index) {
  return mix64(mix64(mix64(base) ^ iteration) ^ (index * 0xd1b54a32d192ed03ULL));
}

/// Uniform in (0, 1) from the top 53 bits.
constexpr double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// A standard normal variate that is a pure function of `seed` (Box-Muller).
inline double standard_normal_from_seed(std::uint64_t seed) {
  const double u1 = unit_open(mix64(seed));
  const double u2 = unit_open(mix64(seed ^ 0x5851f42d4c957f2dULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ardfds
