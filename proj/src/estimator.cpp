#include "ardfds/estimator.hpp"

#include <stdexcept>
#include <string>

namespace ardfds {

SphereSampler::SphereSampler(std::size_t dim, Seed seed) : dim_(dim), engine_(mix64(seed)) {
  if (dim == 0) throw std::invalid_argument("SphereSampler: dimension must be positive");
}

Vector SphereSampler::sample() {
  Vector e(dim_);
  sample_into(e);
  return e;
}

void SphereSampler::sample_into(std::span<double> out) {
  double sq = 0.0;
  do {
    sq = 0.0;
    for (double& v : out) {
      v = normal_(engine_);
      sq += v * v;
    }
  } while (sq == 0.0);
  const double inv = 1.0 / std::sqrt(sq);
  for (double& v : out) v *= inv;
}

Vector GradientEstimate::vector() const {
  Vector g(direction.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = slope * direction[i];
  return g;
}

namespace {

double pair_difference(const NoisyProblem& problem, std::span<const double> x,
                       std::span<const double> shifted, Seed xi, OracleLedger& ledger) {
  const auto [at_shift, at_x] = evaluate_pair(problem, shifted, x, xi, ledger);
  return at_shift - at_x;
}

}  // namespace

double batch_slope(const NoisyProblem& problem, std::span<const double> x,
                   std::span<const double> direction, double t, std::size_t m, SeedStream seeds,
                   OracleLedger& ledger, Execution exec) {
  if (!(t > 0.0)) throw std::invalid_argument("estimate_gradient: smoothing t must be positive");
  if (m < 1) throw std::invalid_argument("estimate_gradient: batch size must be at least 1");
  if (x.size() != problem.dim() || direction.size() != problem.dim()) {
    throw std::invalid_argument("estimate_gradient: dimension mismatch (problem " +
                                std::to_string(problem.dim()) + ")");
  }

  thread_local Vector shifted;
  shifted.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) shifted[j] = x[j] + t * direction[j];

  double sum = 0.0;
  if (exec == Execution::serial || m < kParallelBatchThreshold) {
    for (std::size_t i = 0; i < m; ++i) sum += pair_difference(problem, x, shifted, seeds.at(i), ledger);
  } else {
    Vector diffs(m);
    const auto count = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      diffs[i] = pair_difference(problem, x, shifted, seeds.at(static_cast<std::uint64_t>(i)), ledger);
    }
    for (double d : diffs) sum += d;
  }
  return sum / static_cast<double>(m) / t;
}

GradientEstimate estimate_gradient(const NoisyProblem& problem, std::span<const double> x,
                                   double t, std::size_t m, SphereSampler& sampler,
                                   SeedStream seeds, OracleLedger& ledger, Execution exec) {
  if (sampler.dim() != problem.dim()) {
    throw std::invalid_argument("estimate_gradient: sampler dimension mismatch");
  }
  GradientEstimate est;
  est.direction = sampler.sample();
  est.batch_size = m;
  est.smoothing = t;
  est.slope = batch_slope(problem, x, est.direction, t, m, seeds, ledger, exec);
  return est;
}

}  // namespace ardfds
