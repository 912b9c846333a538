#include "ardfds/sphere_moments.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ardfds {

double dual_norm(std::span<const double> v, double q) {
  if (std::isinf(q)) return norm_inf(v);
  if (q == 2.0) return norm2(v);
  return norm_r(v, q);
}

namespace {

struct BlockSums {
  double norm_sq = 0.0, norm_sq2 = 0.0;
  double prod = 0.0, prod2 = 0.0;
};

BlockSums run_block(std::size_t n, double q, std::size_t count, std::span<const double> s,
                    Seed seed, std::uint64_t block) {
  SphereSampler sampler(n, derive_seed(seed, block, 0));
  Vector e(n);
  BlockSums b;
  for (std::size_t i = 0; i < count; ++i) {
    sampler.sample_into(e);
    const double nq = dual_norm(e, q);
    const double a = nq * nq;
    const double se = dot(s, e);
    const double p = se * se * a;
    b.norm_sq += a;
    b.norm_sq2 += a * a;
    b.prod += p;
    b.prod2 += p * p;
  }
  return b;
}

MonteCarloMean finish(double sum, double sum_sq, std::size_t samples) {
  const double k = static_cast<double>(samples);
  const double mean = sum / k;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0)) : 0.0;
  return {mean, std::sqrt(var / k)};
}

}  // namespace

SphereMoments sphere_moments(std::size_t n, double q, std::size_t samples,
                             std::span<const double> s, Seed seed, Execution exec) {
  if (samples == 0) throw std::invalid_argument("sphere_moments: need at least one sample");
  if (s.size() != n) throw std::invalid_argument("sphere_moments: s has wrong dimension");

  const std::size_t blocks = (samples + kMomentBlock - 1) / kMomentBlock;
  std::vector<BlockSums> partial(blocks);
  auto block_size = [&](std::size_t b) {
    return b + 1 < blocks ? kMomentBlock : samples - b * kMomentBlock;
  };

  if (exec == Execution::serial) {
    for (std::size_t b = 0; b < blocks; ++b) partial[b] = run_block(n, q, block_size(b), s, seed, b);
  } else {
    const auto count = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < count; ++b) {
      const auto ub = static_cast<std::size_t>(b);
      partial[ub] = run_block(n, q, block_size(ub), s, seed, ub);
    }
  }

  BlockSums total;
  for (const BlockSums& b : partial) {
    total.norm_sq += b.norm_sq;
    total.norm_sq2 += b.norm_sq2;
    total.prod += b.prod;
    total.prod2 += b.prod2;
  }
  return {finish(total.norm_sq, total.norm_sq2, samples), finish(total.prod, total.prod2, samples)};
}

}  // namespace ardfds
