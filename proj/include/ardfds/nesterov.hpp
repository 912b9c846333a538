#pragma once

#include "ardfds/oracle.hpp"

namespace ardfds {

/// Nesterov's chain quadratic
///   f(x) = (L2/4) (1/2 [x_1^2 + sum_{i<n} (x_i - x_{i+1})^2 + x_n^2] - x_1)
/// observed as f(x) + xi <a, x> + delta sin ||x||_2 with xi ~ N(0, sigma^2).
/// x*_i = 1 - i/(n+1), f* = (L2/8)(-1 + 1/(n+1)).
class NesterovProblem final : public NoisyProblem, public CleanObjective {
 public:
  /// `a_seed` fixes the unit vector a of the stochastic term.
  NesterovProblem(std::size_t n, double lipschitz, double sigma, double delta, Seed a_seed = 0);

  std::size_t dim() const override { return n_; }
  double stochastic_value(std::span<const double> x, Seed xi) const override;
  double adversarial_noise(std::span<const double> x) const override;
  double delta_noise() const override { return delta_; }
  double lipschitz_grad() const override { return l2_; }
  double sigma2() const override { return sigma_ * sigma_; }

  double value(std::span<const double> x) const override;
  std::optional<double> optimal_value() const override { return f_star_; }

  double sigma() const { return sigma_; }
  const Vector& a() const { return a_; }
  const Vector& x_star() const { return x_star_; }
  double f_star() const { return f_star_; }

 private:
  std::size_t n_;
  double l2_;
  double sigma_;
  double delta_;
  Vector a_;
  Vector x_star_;
  double f_star_;
};

/// Exact objective value.
double nesterov_value(const NesterovProblem& prob, std::span<const double> x);

/// One oracle observation f(x) + xi <a, x> + delta sin ||x||_2 for the xi drawn from `xi`.
double noisy_nesterov_oracle(const NesterovProblem& prob, std::span<const double> x, Seed xi);

/// x* + L2 e_1: the starting point with ||x0 - x*||_1 = ||x0 - x*||_2 = L2.
Vector make_x0(const NesterovProblem& prob);

}  // namespace ardfds
