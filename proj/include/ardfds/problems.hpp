#pragma once

#include <cmath>
#include <stdexcept>

#include "ardfds/oracle.hpp"

namespace ardfds {

/// f(x) = <c, x>, optionally with eta(x) = delta * sin ||x||_2.
class LinearProblem final : public NoisyProblem, public CleanObjective {
 public:
  explicit LinearProblem(Vector c, double delta = 0.0) : c_(std::move(c)), delta_(delta) {}

  std::size_t dim() const override { return c_.size(); }
  double stochastic_value(std::span<const double> x, Seed) const override { return dot(c_, x); }
  double adversarial_noise(std::span<const double> x) const override {
    return delta_ == 0.0 ? 0.0 : delta_ * std::sin(norm2(x));
  }
  double delta_noise() const override { return delta_; }
  double lipschitz_grad() const override { return 1.0; }  // any L > 0 bounds a zero Hessian
  double value(std::span<const double> x) const override { return dot(c_, x); }

  const Vector& coefficients() const { return c_; }

 private:
  Vector c_;
  double delta_;
};

/// f(x) = (L/2) ||x - center||_2^2, exact oracle; f* = 0.
class QuadraticProblem final : public NoisyProblem, public CleanObjective {
 public:
  QuadraticProblem(std::size_t n, double lipschitz, Vector center = {})
      : n_(n), l_(lipschitz), center_(center.empty() ? Vector(n, 0.0) : std::move(center)) {
    if (lipschitz <= 0.0) throw std::invalid_argument("QuadraticProblem: L must be positive");
    if (center_.size() != n_) throw std::invalid_argument("QuadraticProblem: center dimension");
  }

  std::size_t dim() const override { return n_; }
  double stochastic_value(std::span<const double> x, Seed) const override { return value(x); }
  double lipschitz_grad() const override { return l_; }
  double value(std::span<const double> x) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (x[i] - center_[i]) * (x[i] - center_[i]);
    return 0.5 * l_ * s;
  }
  std::optional<double> optimal_value() const override { return 0.0; }

 private:
  std::size_t n_;
  double l_;
  Vector center_;
};

/// f(x) = c everywhere.
class ConstantProblem final : public NoisyProblem, public CleanObjective {
 public:
  ConstantProblem(std::size_t n, double c) : n_(n), c_(c) {}

  std::size_t dim() const override { return n_; }
  double stochastic_value(std::span<const double>, Seed) const override { return c_; }
  double lipschitz_grad() const override { return 1.0; }
  double value(std::span<const double>) const override { return c_; }
  std::optional<double> optimal_value() const override { return c_; }

 private:
  std::size_t n_;
  double c_;
};

}  // namespace ardfds
