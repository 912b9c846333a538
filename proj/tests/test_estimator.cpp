#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ardfds/estimator.hpp"
#include "ardfds/nesterov.hpp"
#include "ardfds/problems.hpp"
#include "support/oracles.hpp"

using namespace ardfds;

TEST(SphereSampler, OneDimensionalIsPlusMinusOne) {
  SphereSampler sampler(1, 3);
  bool saw_plus = false, saw_minus = false;
  for (int i = 0; i < 200; ++i) {
    const double v = sampler.sample()[0];
    EXPECT_DOUBLE_EQ(std::abs(v), 1.0);
    (v > 0 ? saw_plus : saw_minus) = true;
  }
  EXPECT_TRUE(saw_plus && saw_minus);
}

TEST(SphereSampler, UnitNorm) {
  for (std::size_t n : {2u, 8u, 100u, 5000u}) {
    SphereSampler sampler(n, n);
    for (int i = 0; i < 50; ++i) EXPECT_NEAR(norm2(sampler.sample()), 1.0, 1e-12) << "n=" << n;
  }
}

TEST(SphereSampler, ZeroDimensionRejected) {
  EXPECT_THROW(SphereSampler(0, 1), std::invalid_argument);
}

TEST(SphereSampler, CoordinateMeansNearZero) {
  const std::size_t n = 8, samples = 100000;
  SphereSampler sampler(n, 17);
  Vector mean(n, 0.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector e = sampler.sample();
    for (std::size_t i = 0; i < n; ++i) mean[i] += e[i];
  }
  // Each coordinate has variance 1/n; the bound is three standard errors
  // sqrt(1 / (n samples)) scaled by sqrt(n) for slack across coordinates.
  const double bound = 3.0 / std::sqrt(static_cast<double>(n * samples)) * std::sqrt(8.0);
  for (double m : mean) EXPECT_LE(std::abs(m / samples), bound);
}

TEST(SphereSampler, SquaredProjectionMean) {
  const std::size_t n = 100, samples = 100000;
  std::mt19937_64 rng(8);
  const Vector s = reference::random_vector(rng, n);
  SphereSampler sampler(n, 21);
  double acc = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double p = dot(s, sampler.sample());
    acc += p * p;
  }
  const double expected = dot(s, s) / static_cast<double>(n);
  EXPECT_NEAR(acc / samples, expected, 0.05 * expected);
}

TEST(EstimateGradient, ExactOnLinearObjective) {
  std::mt19937_64 rng(4);
  LinearProblem prob(reference::random_vector(rng, 12));
  SphereSampler sampler(12, 5);
  OracleLedger ledger;
  const Vector x = reference::random_vector(rng, 12);
  for (double t : {1e-6, 1e-2, 3.0}) {
    const GradientEstimate g = estimate_gradient(prob, x, t, 1, sampler, {1, 0}, ledger);
    const double expected = dot(prob.coefficients(), g.direction);
    EXPECT_NEAR(g.slope, expected, 1e-8 * (1.0 + 1.0 / t));
  }
}

TEST(EstimateGradient, QuadraticAtOriginIsHalfT) {
  QuadraticProblem prob(10, 1.0);
  SphereSampler sampler(10, 9);
  OracleLedger ledger;
  const Vector x(10, 0.0);
  const double t = 0.3;
  const GradientEstimate g = estimate_gradient(prob, x, t, 1, sampler, {2, 0}, ledger);
  const Vector v = g.vector();
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], t / 2.0 * g.direction[i], 1e-15);
}

TEST(EstimateGradient, UnbiasedOnLinearObjective) {
  const std::size_t n = 50, samples = 100000;
  std::mt19937_64 rng(12);
  LinearProblem prob(reference::random_vector(rng, n));
  SphereSampler sampler(n, 33);
  OracleLedger ledger;
  const Vector x(n, 0.0);
  Vector sum(n, 0.0), sum_sq(n, 0.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const GradientEstimate g = estimate_gradient(prob, x, 1e-3, 1, sampler, {3, k}, ledger);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = static_cast<double>(n) * g.slope * g.direction[i];
      sum[i] += v;
      sum_sq[i] += v * v;
    }
  }
  const Vector& c = prob.coefficients();
  const double count = static_cast<double>(samples);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = sum[i] / count;
    const double se = std::sqrt((sum_sq[i] / count - mean * mean) / count);
    EXPECT_NEAR(mean, c[i], 3.0 * se) << "coordinate " << i;
  }
}

TEST(EstimateGradient, RejectsBadArguments) {
  LinearProblem prob({1.0, 2.0});
  SphereSampler sampler(2, 1), wrong(3, 1);
  OracleLedger ledger;
  const Vector x(2, 0.0);
  EXPECT_THROW(estimate_gradient(prob, x, 0.0, 1, sampler, {}, ledger), std::invalid_argument);
  EXPECT_THROW(estimate_gradient(prob, x, -1.0, 1, sampler, {}, ledger), std::invalid_argument);
  EXPECT_THROW(estimate_gradient(prob, x, 1.0, 0, sampler, {}, ledger), std::invalid_argument);
  EXPECT_THROW(estimate_gradient(prob, x, 1.0, 1, wrong, {}, ledger), std::invalid_argument);
  EXPECT_THROW(estimate_gradient(prob, Vector(3, 0.0), 1.0, 1, sampler, {}, ledger),
               std::invalid_argument);
}

TEST(EstimateGradient, CollinearWithDirection) {
  std::mt19937_64 rng(6);
  QuadraticProblem prob(30, 2.0, reference::random_vector(rng, 30));
  SphereSampler sampler(30, 8);
  OracleLedger ledger;
  const Vector x = reference::random_vector(rng, 30);
  for (int k = 0; k < 20; ++k) {
    const GradientEstimate g = estimate_gradient(prob, x, 1e-4, 4, sampler, {4, static_cast<std::uint64_t>(k)}, ledger);
    const Vector v = g.vector();
    const double along = dot(v, g.direction);
    Vector rest(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rest[i] = v[i] - along * g.direction[i];
    EXPECT_LE(norm2(rest), 1e-10 * norm2(v));
  }
}

TEST(EstimateGradient, LedgerAdvancesByBatch) {
  QuadraticProblem prob(5, 1.0);
  SphereSampler sampler(5, 1);
  OracleLedger ledger;
  const Vector x(5, 1.0);
  estimate_gradient(prob, x, 1e-3, 7, sampler, {}, ledger);
  EXPECT_EQ(ledger.calls(), 7u);
  estimate_gradient(prob, x, 1e-3, 64, sampler, {}, ledger);
  EXPECT_EQ(ledger.calls(), 71u);
}

TEST(EstimateGradient, DeterministicForSameState) {
  NesterovProblem prob(40, 10.0, 0.3, 1e-4, 2);
  std::mt19937_64 rng(1);
  const Vector x = reference::random_vector(rng, 40);
  SphereSampler a(40, 77), b(40, 77);
  OracleLedger la, lb;
  const GradientEstimate ga = estimate_gradient(prob, x, 1e-3, 16, a, {5, 9}, la);
  const GradientEstimate gb = estimate_gradient(prob, x, 1e-3, 16, b, {5, 9}, lb);
  EXPECT_EQ(ga.slope, gb.slope);
  EXPECT_EQ(ga.direction, gb.direction);
}

TEST(BatchSlope, SerialAndParallelBitIdentical) {
  NesterovProblem prob(200, 10.0, 1.0, 1e-3, 3);
  std::mt19937_64 rng(3);
  const Vector x = reference::random_vector(rng, 200);
  const Vector e = SphereSampler(200, 4).sample();
  for (std::size_t m : {1u, 31u, 64u, 257u}) {
    OracleLedger ls, lp;
    const double serial = batch_slope(prob, x, e, 1e-4, m, {6, 1}, ls, Execution::serial);
    const double parallel = batch_slope(prob, x, e, 1e-4, m, {6, 1}, lp, Execution::parallel);
    EXPECT_EQ(serial, parallel) << "m=" << m;
    EXPECT_EQ(ls.calls(), m);
    EXPECT_EQ(lp.calls(), m);
  }
}
