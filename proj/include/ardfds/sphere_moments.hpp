#pragma once

#include <span>

#include "ardfds/estimator.hpp"

namespace ardfds {

struct MonteCarloMean {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Empirical E||e||_q^2 and E(<s,e>^2 ||e||_q^2) for e uniform on the sphere.
struct SphereMoments {
  MonteCarloMean norm_sq;
  MonteCarloMean product;
};

/// ||v||_q for q in [1, inf]; q = infinity is the max norm.
double dual_norm(std::span<const double> v, double q);

/// Samples are drawn in fixed-size blocks, each with its own derived seed, and
/// block sums are combined in block order: the result does not depend on the
/// thread count.
SphereMoments sphere_moments(std::size_t n, double q, std::size_t samples,
                             std::span<const double> s, Seed seed,
                             Execution exec = Execution::parallel);

inline constexpr std::size_t kMomentBlock = 1024;

}  // namespace ardfds
