#include "ardfds/nesterov.hpp"

#include <cmath>
#include <stdexcept>

#include "ardfds/estimator.hpp"
#include "ardfds/random.hpp"

namespace ardfds {

NesterovProblem::NesterovProblem(std::size_t n, double lipschitz, double sigma, double delta,
                                 Seed a_seed)
    : n_(n), l2_(lipschitz), sigma_(sigma), delta_(delta) {
  if (n < 2) throw std::invalid_argument("NesterovProblem: n must be at least 2");
  if (!(lipschitz > 0.0)) throw std::invalid_argument("NesterovProblem: L2 must be positive");
  if (sigma < 0.0 || delta < 0.0) {
    throw std::invalid_argument("NesterovProblem: sigma and delta must be non-negative");
  }
  a_ = SphereSampler(n, a_seed).sample();
  x_star_.resize(n);
  const double np1 = static_cast<double>(n) + 1.0;
  for (std::size_t i = 0; i < n; ++i) x_star_[i] = 1.0 - static_cast<double>(i + 1) / np1;
  f_star_ = lipschitz / 8.0 * (-1.0 + 1.0 / np1);
}

double NesterovProblem::value(std::span<const double> x) const {
  double sq = x[0] * x[0] + x[n_ - 1] * x[n_ - 1];
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double d = x[i] - x[i + 1];
    sq += d * d;
  }
  return l2_ / 4.0 * (0.5 * sq - x[0]);
}

double NesterovProblem::stochastic_value(std::span<const double> x, Seed xi) const {
  if (sigma_ == 0.0) return value(x);
  // One pass for both the quadratic and <a, x>.
  double sq = x[0] * x[0] + x[n_ - 1] * x[n_ - 1];
  double ax = a_[n_ - 1] * x[n_ - 1];
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double d = x[i] - x[i + 1];
    sq += d * d;
    ax += a_[i] * x[i];
  }
  const double f = l2_ / 4.0 * (0.5 * sq - x[0]);
  return f + sigma_ * standard_normal_from_seed(xi) * ax;
}

double NesterovProblem::adversarial_noise(std::span<const double> x) const {
  return delta_ == 0.0 ? 0.0 : delta_ * std::sin(norm2(x));
}

double nesterov_value(const NesterovProblem& prob, std::span<const double> x) {
  if (x.size() != prob.dim()) throw std::invalid_argument("nesterov_value: dimension mismatch");
  return prob.value(x);
}

double noisy_nesterov_oracle(const NesterovProblem& prob, std::span<const double> x, Seed xi) {
  if (x.size() != prob.dim()) throw std::invalid_argument("noisy_nesterov_oracle: dimension mismatch");
  return prob.observe(x, xi);
}

Vector make_x0(const NesterovProblem& prob) {
  Vector x0 = prob.x_star();
  x0[0] += prob.lipschitz_grad();
  return x0;
}

}  // namespace ardfds
