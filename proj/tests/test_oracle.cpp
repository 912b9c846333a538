#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ardfds/nesterov.hpp"
#include "ardfds/oracle.hpp"
#include "ardfds/problems.hpp"
#include "ardfds/random.hpp"
#include "support/oracles.hpp"

using namespace ardfds;

namespace {

// F(x, xi) = <c, x> + h(xi): the xi part must cancel inside a pair.
class SeparableProblem final : public NoisyProblem {
 public:
  explicit SeparableProblem(Vector c) : c_(std::move(c)) {}
  std::size_t dim() const override { return c_.size(); }
  double stochastic_value(std::span<const double> x, Seed xi) const override {
    return dot(c_, x) + 100.0 * standard_normal_from_seed(xi);
  }
  double lipschitz_grad() const override { return 1.0; }

 private:
  Vector c_;
};

}  // namespace

TEST(EvaluatePair, LinearObjectiveValues) {
  LinearProblem prob({1.0, -2.0, 3.0});
  OracleLedger ledger;
  const Vector x(3, 0.0);
  const Vector y = prob.coefficients();
  const auto [fx, fy] = evaluate_pair(prob, x, y, 7, ledger);
  EXPECT_EQ(fx, 0.0);
  EXPECT_DOUBLE_EQ(fy, 14.0);
  EXPECT_EQ(ledger.calls(), 1u);
}

TEST(EvaluatePair, NesterovOptimumBothValues) {
  NesterovProblem prob(4, 10.0, 0.0, 0.0);
  OracleLedger ledger;
  const auto [a, b] = evaluate_pair(prob, prob.x_star(), prob.x_star(), 3, ledger);
  EXPECT_NEAR(a, -1.0, 1e-12);
  EXPECT_NEAR(b, -1.0, 1e-12);
}

TEST(EvaluatePair, SineNoiseVanishesAtOrigin) {
  LinearProblem prob({1.0, 1.0}, 0.1);
  const Vector zero(2, 0.0);
  EXPECT_EQ(prob.adversarial_noise(zero), 0.0);
  OracleLedger ledger;
  EXPECT_EQ(evaluate_pair(prob, zero, zero, 1, ledger).first, 0.0);
}

TEST(EvaluatePair, DimensionMismatchThrows) {
  LinearProblem prob({1.0, 2.0});
  OracleLedger ledger;
  const Vector good(2, 0.0), bad(3, 0.0);
  EXPECT_THROW(evaluate_pair(prob, good, bad, 0, ledger), std::invalid_argument);
  EXPECT_THROW(evaluate_pair(prob, bad, good, 0, ledger), std::invalid_argument);
  EXPECT_EQ(ledger.calls(), 0u);
}

TEST(EvaluatePair, SharedRealizationCancels) {
  std::mt19937_64 rng(11);
  const Vector c = reference::random_vector(rng, 6);
  SeparableProblem prob(c);
  const Vector x = reference::random_vector(rng, 6), y = reference::random_vector(rng, 6);
  OracleLedger ledger;
  const double expected = dot(c, x) - dot(c, y);
  for (Seed xi = 0; xi < 100; ++xi) {
    const auto [fx, fy] = evaluate_pair(prob, x, y, xi, ledger);
    EXPECT_NEAR(fx - fy, expected, 1e-10);
  }
  EXPECT_EQ(ledger.calls(), 100u);
}

TEST(EvaluatePair, FixedSeedIsDeterministic) {
  NesterovProblem prob(20, 10.0, 0.5, 1e-3, 4);
  std::mt19937_64 rng(2);
  const Vector x = reference::random_vector(rng, 20);
  EXPECT_EQ(prob.observe(x, 99), prob.observe(x, 99));
  EXPECT_NE(prob.observe(x, 99), prob.observe(x, 100));
}

TEST(AdversarialNoise, BoundedOnRandomPoints) {
  const double delta = 0.25;
  NesterovProblem prob(10, 10.0, 0.0, delta);
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vector x = reference::random_vector(rng, 10, 3.0);
    worst = std::max(worst, std::abs(prob.adversarial_noise(x)));
  }
  EXPECT_LE(worst, delta);
  EXPECT_GT(worst, 0.9 * delta);
}

TEST(OracleLedger, CountsCalls) {
  OracleLedger ledger;
  EXPECT_EQ(oracle_call_count(ledger), 0u);
  LinearProblem prob({1.0});
  const Vector x{0.5};
  for (int i = 0; i < 3; ++i) evaluate_pair(prob, x, x, i, ledger);
  EXPECT_EQ(oracle_call_count(ledger), 3u);
}

TEST(OracleLedger, AtomicUnderConcurrentUse) {
  OracleLedger ledger;
  LinearProblem prob({1.0, 2.0});
  const Vector x{0.1, 0.2};
#pragma omp parallel for num_threads(4)
  for (int i = 0; i < 4000; ++i) evaluate_pair(prob, x, x, static_cast<Seed>(i), ledger);
  EXPECT_EQ(ledger.calls(), 4000u);
}
