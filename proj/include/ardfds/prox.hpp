#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "ardfds/vector_ops.hpp"

namespace ardfds {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Mirror-descent geometry. p = 2 uses d(x) = ||x||_2^2 / 2. p = 1 uses
/// d(x) = A_n ||x||_kappa^2 with kappa = 1 + 1/ln n and
/// A_n = e n^((kappa-1)(2-kappa)/kappa) ln n / 2, which is 1-strongly convex
/// with respect to ||.||_1.
struct ProxSetup {
  int p = 2;
  std::size_t dim = 0;
  double kappa = 2.0;  // norm index of the prox-function
  double a_n = 0.5;    // d(x) = a_n ||x||_kappa^2

  static ProxSetup euclidean(std::size_t n);
  /// Requires n >= 3 so that 1 < kappa <= 2.
  static ProxSetup l1(std::size_t n);
  /// p in {1, 2}; anything else throws std::invalid_argument.
  static ProxSetup make(int p, std::size_t n);

  /// Conjugate index: infinity for p = 1, 2 for p = 2.
  double q() const { return p == 1 ? kInfinity : 2.0; }
};

/// min{q - 1, 16 ln n - 8} n^(2/q - 1), the bound on E||e||_q^2 for
/// e uniform on the unit sphere. Throws std::domain_error when n < 8.
double rho(std::size_t n, double q);
inline double rho(const ProxSetup& setup) { return rho(setup.dim, setup.q()); }

double prox_value(const ProxSetup& setup, std::span<const double> x);

/// Gradient of ||z||_kappa^2: 2 ||z||_kappa^(2-kappa) |z_i|^(kappa-1) sign(z_i).
/// Zero at z = 0, where the squared norm attains its minimum.
Vector grad_kappa_norm_sq(double kappa, std::span<const double> z);
inline Vector grad_kappa_norm_sq(const ProxSetup& setup, std::span<const double> z) {
  return grad_kappa_norm_sq(setup.kappa, z);
}

/// Gradient of the prox-function.
Vector prox_gradient(const ProxSetup& setup, std::span<const double> z);

/// V[z](x) = d(x) - d(z) - <grad d(z), x - z>, clamped at zero against rounding.
double bregman(const ProxSetup& setup, std::span<const double> z, std::span<const double> x);

/// argmin_u <s, u - z> + V[z](u).
///
/// p = 2: z - s.
/// p = 1: dividing by A_n turns the problem into min -<sh, u> + ||u||_kappa^2 with
/// sh = -s / A_n + grad ||.||_kappa^2 (z), whose minimizer is
///   u_i = sign(sh_i) (|sh_i|/2)^(1/(kappa-1)) (sum_j (|sh_j|/2)^(kappa/(kappa-1)))^((kappa-2)/kappa).
/// The powers are evaluated relative to max_j |sh_j|/2, which cancels out of the
/// product, so exponents up to ln n cannot overflow.
Vector mirror_step(const ProxSetup& setup, std::span<const double> z, std::span<const double> s);
void mirror_step_into(const ProxSetup& setup, std::span<const double> z,
                      std::span<const double> s, std::span<double> out);

/// argmin_u -<sh, u> + ||u||_kappa^2 (the closed form above). `sh` and `out`
/// may alias. At the minimizer grad ||u||_kappa^2 = sh.
void kappa_linear_argmin(double kappa, std::span<const double> sh, std::span<double> out);

/// A point updated only through mirror steps. For p = 1 it carries
/// grad ||point||_kappa^2 along, which after a step is exactly the sh that
/// produced it, so each step costs one log and one exp per coordinate.
class MirrorIterate {
 public:
  MirrorIterate(const ProxSetup& setup, std::span<const double> start);

  /// point <- argmin_u <s, u - point> + V[point](u).
  void step(std::span<const double> s);
  const Vector& point() const { return point_; }

 private:
  ProxSetup setup_;
  Vector point_;
  Vector dual_;  // grad ||point||_kappa^2, p = 1 only
};

}  // namespace ardfds
