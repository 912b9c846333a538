#pragma once

#include <cstdint>
#include <random>
#include <span>

#include <boost/random/normal_distribution.hpp>

#include "ardfds/oracle.hpp"
#include "ardfds/random.hpp"

namespace ardfds {

/// Selects the OpenMP kernel or the serial reference. Both produce
/// bit-identical results; the serial path exists for testing and benchmarks.
enum class Execution { serial, parallel };

/// Uniform directions on the unit Euclidean sphere in R^n, drawn as a
/// normalized standard Gaussian vector (ziggurat normals over mt19937_64).
class SphereSampler {
 public:
  SphereSampler(std::size_t dim, Seed seed);

  std::size_t dim() const { return dim_; }
  Vector sample();
  void sample_into(std::span<double> out);

 private:
  std::size_t dim_;
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

/// Per-element xi seeds for one batch.
struct SeedStream {
  Seed base = 0;
  std::uint64_t iteration = 0;
  Seed at(std::uint64_t index) const { return derive_seed(base, iteration, index); }
};

/// Batched two-point finite-difference estimate
///   (1/m) sum_i [f~(x + t e, xi_i) - f~(x, xi_i)] / t * e.
/// Always a multiple of the direction; `slope` is that multiple.
struct GradientEstimate {
  Vector direction;
  double slope = 0.0;
  std::size_t batch_size = 0;
  double smoothing = 0.0;

  Vector vector() const;
};

/// Mean finite-difference slope along `direction` over m realizations.
/// Records m oracle calls. Differences are summed in index order after
/// evaluation, so the result is independent of the worker count.
double batch_slope(const NoisyProblem& problem, std::span<const double> x,
                   std::span<const double> direction, double t, std::size_t m, SeedStream seeds,
                   OracleLedger& ledger, Execution exec = Execution::parallel);

/// Samples one direction and forms the batched estimate at x.
/// Throws std::invalid_argument for t <= 0, m < 1 or a dimension mismatch.
GradientEstimate estimate_gradient(const NoisyProblem& problem, std::span<const double> x,
                                   double t, std::size_t m, SphereSampler& sampler,
                                   SeedStream seeds, OracleLedger& ledger,
                                   Execution exec = Execution::parallel);

/// Batches at or above this size fan out to OpenMP workers.
inline constexpr std::size_t kParallelBatchThreshold = 32;

}  // namespace ardfds
