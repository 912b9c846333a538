#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ardfds/experiment.hpp"
#include "ardfds/nesterov.hpp"
#include "ardfds/prox.hpp"
#include "support/oracles.hpp"

using namespace ardfds;

namespace {

// The chain quadratic written out term by term, independent of the library.
double direct_value(const Vector& x, double lipschitz) {
  const std::size_t n = x.size();
  double s = x[0] * x[0] + x[n - 1] * x[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) s += (x[i] - x[i + 1]) * (x[i] - x[i + 1]);
  return lipschitz / 4.0 * (0.5 * s - x[0]);
}

}  // namespace

TEST(NesterovProblem, OptimumValueMatchesDirectFormula) {
  for (std::size_t n : {4u, 100u, 1000u}) {
    NesterovProblem prob(n, 10.0, 0.0, 0.0);
    const double direct = direct_value(prob.x_star(), 10.0);
    const double closed = 10.0 / 8.0 * (-1.0 + 1.0 / (static_cast<double>(n) + 1.0));
    EXPECT_NEAR(prob.f_star(), closed, 1e-12 * std::abs(closed));
    EXPECT_NEAR(direct, closed, 1e-12 * std::abs(closed)) << "n=" << n;
  }
  NesterovProblem small(4, 10.0, 0.0, 0.0);
  EXPECT_NEAR(small.f_star(), -1.0, 1e-12);
  const Vector expected{0.8, 0.6, 0.4, 0.2};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(small.x_star()[i], expected[i], 1e-15);
}

TEST(NesterovProblem, ValueAtOriginIsZero) {
  NesterovProblem prob(50, 10.0, 0.0, 0.0);
  EXPECT_EQ(nesterov_value(prob, Vector(50, 0.0)), 0.0);
}

TEST(NesterovProblem, InitialGapIs250) {
  NesterovProblem prob(100, 10.0, 0.0, 0.0);
  const Vector x0 = make_x0(prob);
  EXPECT_NEAR(nesterov_value(prob, x0) - prob.f_star(), 250.0, 250.0 * 1e-9);
}

TEST(NesterovProblem, StartingPoint) {
  NesterovProblem prob(4, 10.0, 0.0, 0.0);
  const Vector x0 = make_x0(prob);
  const Vector expected{10.8, 0.6, 0.4, 0.2};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(x0[i], expected[i], 1e-14);
  const Vector d = difference(x0, prob.x_star());
  EXPECT_NEAR(norm1(d), 10.0, 1e-14);
  EXPECT_NEAR(norm2(d), 10.0, 1e-14);
}

TEST(NesterovProblem, RejectsInvalidConstruction) {
  EXPECT_THROW(NesterovProblem(4, 0.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(NesterovProblem(4, -1.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(NesterovProblem(1, 10.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(NesterovProblem(4, 10.0, -1.0, 0.0), std::invalid_argument);
}

TEST(NesterovProblem, UnitPerturbationVector) {
  for (Seed s : {0u, 1u, 99u}) EXPECT_NEAR(norm2(NesterovProblem(300, 10.0, 1.0, 0.0, s).a()), 1.0, 1e-12);
}

TEST(NesterovProblem, QuadraticIdentity) {
  const std::size_t n = 60;
  const double lipschitz = 10.0;
  NesterovProblem prob(n, lipschitz, 0.0, 0.0);
  const Eigen::MatrixXd h = reference::nesterov_hessian(n, lipschitz);
  const Eigen::Map<const Eigen::VectorXd> xs(prob.x_star().data(), n);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = reference::random_vector(rng, n, 2.0);
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    const double quad = 0.5 * (xv - xs).dot(h * (xv - xs));
    const double gap = nesterov_value(prob, x) - prob.f_star();
    EXPECT_NEAR(gap, quad, 1e-8 * std::abs(quad));
  }
}

TEST(NesterovProblem, HessianNormBelowLipschitz) {
  for (std::size_t n : {10u, 100u, 1000u}) {
    const double lambda = reference::power_iteration(reference::nesterov_hessian(n, 10.0));
    EXPECT_LE(lambda, 10.0) << "n=" << n;
    EXPECT_GT(lambda, 9.0) << "n=" << n;
  }
}

TEST(NesterovOracle, NoiselessReducesToValue) {
  NesterovProblem prob(30, 10.0, 0.0, 0.0);
  std::mt19937_64 rng(2);
  const Vector x = reference::random_vector(rng, 30);
  EXPECT_EQ(noisy_nesterov_oracle(prob, x, 123), nesterov_value(prob, x));
}

TEST(NesterovOracle, ZeroAtOrigin) {
  NesterovProblem prob(30, 10.0, 2.0, 0.5, 7);
  EXPECT_EQ(noisy_nesterov_oracle(prob, Vector(30, 0.0), 55), 0.0);
}

TEST(NesterovOracle, StochasticTermMoments) {
  const double sigma = 0.7, delta = 0.01;
  NesterovProblem prob(25, 10.0, sigma, delta, 3);
  std::mt19937_64 rng(3);
  const Vector x = reference::random_vector(rng, 25);
  const double base = nesterov_value(prob, x) + delta * std::sin(norm2(x));
  const double ax = dot(prob.a(), x);
  const std::size_t samples = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (Seed xi = 0; xi < samples; ++xi) {
    const double v = noisy_nesterov_oracle(prob, x, xi) - base;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double var = sum_sq / samples - mean * mean;
  EXPECT_NEAR(mean, 0.0, 3.0 * sigma * std::abs(ax) / std::sqrt(double(samples)));
  EXPECT_NEAR(var, sigma * sigma * ax * ax, 0.05 * sigma * sigma * ax * ax);
}

TEST(NesterovOracle, DimensionChecked) {
  NesterovProblem prob(5, 10.0, 0.0, 0.0);
  EXPECT_THROW(nesterov_value(prob, Vector(4, 0.0)), std::invalid_argument);
  EXPECT_THROW(noisy_nesterov_oracle(prob, Vector(6, 0.0), 0), std::invalid_argument);
}

TEST(Experiment, GammaPresets) {
  EXPECT_EQ(default_gamma(Method::ardfds, 2), 8.0);
  EXPECT_EQ(default_gamma(Method::ardfds, 1), 2000.0);
  EXPECT_EQ(default_gamma(Method::rdfds, 2), 32.0);
  EXPECT_EQ(default_gamma(Method::rdfds, 1), 1000.0);
}

TEST(Experiment, TargetRelativeAccuracyRange) {
  // eps = 1e-3 against the initial gap of 250.
  ExperimentConfig config;
  config.seeds = {1};
  const ResolvedSettings s = resolve_experiment(config);
  EXPECT_NEAR(s.initial_gap, 250.0, 1e-9);
  const double target = config.eps / s.initial_gap;
  EXPECT_GE(target, 1e-6);
  EXPECT_LE(target, 1e-5);
}

TEST(Experiment, ResolvedDefaults) {
  ExperimentConfig config;
  config.n = 1000;
  config.seeds = {1};
  config.p = 1;
  const ResolvedSettings s = resolve_experiment(config);
  NesterovProblem prob(1000, 10.0, 0.0, 0.0);
  const double theta1 = bregman(ProxSetup::l1(1000), make_x0(prob), prob.x_star());
  EXPECT_NEAR(s.theta1, theta1, 1e-9 * theta1);
  const double sigma2 = std::pow(1e-3, 1.5) * std::sqrt(1000.0 / std::log(1000.0)) *
                        std::sqrt(10.0 / theta1);
  EXPECT_NEAR(s.sigma2, sigma2, 1e-12 * sigma2);
  EXPECT_EQ(s.batch, 1u);
  EXPECT_EQ(s.gamma, 2000.0);
  EXPECT_GE(s.smoothing, 2.0 * std::sqrt(s.delta / 10.0));
}

TEST(Experiment, RelativeAccuracyStartsAtOne) {
  ExperimentConfig config;
  config.n = 20;
  config.seeds = {1, 2, 3};
  config.max_iters = 50;
  for (Method m : {Method::ardfds, Method::rdfds, Method::rspgf}) {
    config.method = m;
    const ExperimentResult r = run_experiment(config);
    ASSERT_EQ(r.runs.size(), 3u);
    for (const auto& run : r.runs) {
      EXPECT_EQ(run.trace.records.front().rel_acc, 1.0);
      EXPECT_EQ(run.oracle_calls, 50u * r.settings.batch);
      for (const auto& rec : run.trace.records) EXPECT_GE(rec.rel_acc, -1e-12);
    }
    EXPECT_EQ(r.aggregate.front().rel_acc_mean, 1.0);
  }
}

TEST(Experiment, AggregateIsMeanWithEnvelope) {
  ExperimentConfig config;
  config.n = 20;
  config.seeds = {4, 5, 6, 7};
  config.max_iters = 200;
  config.record_every = 10;
  const ExperimentResult r = run_experiment(config);
  ASSERT_EQ(r.aggregate.size(), 21u);
  for (std::size_t j = 0; j < r.aggregate.size(); ++j) {
    double mean = 0.0, lo = 1e300, hi = -1e300;
    for (const auto& run : r.runs) {
      const double v = run.trace.records[j].rel_acc;
      mean += v / 4.0;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_NEAR(r.aggregate[j].rel_acc_mean, mean, 1e-15);
    EXPECT_EQ(r.aggregate[j].rel_acc_min, lo);
    EXPECT_EQ(r.aggregate[j].rel_acc_max, hi);
  }
}

TEST(Experiment, EarlyStopAccounting) {
  ExperimentConfig config;
  config.n = 20;
  config.seeds = {1, 2};
  config.max_iters = 100000;
  config.record_every = 25;
  config.until_rel_acc = 1e-3;
  const ExperimentResult r = run_experiment(config);
  ASSERT_TRUE(r.stop_iteration.has_value());
  EXPECT_LT(*r.stop_iteration, 100000u);
  EXPECT_EQ(*r.stop_iteration % 25, 0u);
  EXPECT_LE(r.aggregate.back().rel_acc_mean, 1e-3);
  for (const auto& run : r.runs) EXPECT_EQ(run.oracle_calls, *r.stop_iteration * r.settings.batch);
}

TEST(Experiment, RejectsInvalidConfigs) {
  ExperimentConfig config;
  EXPECT_THROW(resolve_experiment(config), std::invalid_argument);  // no seeds
  config.seeds = {1};
  config.eps = 0.0;
  EXPECT_THROW(resolve_experiment(config), std::invalid_argument);
  config.eps = 1e-3;
  config.method = Method::rspgf;
  config.p = 1;
  EXPECT_THROW(resolve_experiment(config), std::invalid_argument);
}
