#include "ardfds/prox.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ardfds {

namespace {

// r^e for r in [0, 1], via the log domain.
double unit_pow(double r, double e) { return r == 0.0 ? 0.0 : std::exp(e * std::log(r)); }

void check_dim(const ProxSetup& setup, std::size_t got, const char* what) {
  if (got != setup.dim) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(setup.dim) + ", got " + std::to_string(got));
  }
}

}  // namespace

ProxSetup ProxSetup::euclidean(std::size_t n) {
  if (n == 0) throw std::invalid_argument("ProxSetup: dimension must be positive");
  return ProxSetup{2, n, 2.0, 0.5};
}

ProxSetup ProxSetup::l1(std::size_t n) {
  if (n < 3) throw std::invalid_argument("ProxSetup::l1: needs n >= 3 so that kappa <= 2");
  const double ln_n = std::log(static_cast<double>(n));
  const double kappa = 1.0 + 1.0 / ln_n;
  const double expo = (kappa - 1.0) * (2.0 - kappa) / kappa;
  const double a_n = std::numbers::e * std::pow(static_cast<double>(n), expo) * ln_n / 2.0;
  return ProxSetup{1, n, kappa, a_n};
}

ProxSetup ProxSetup::make(int p, std::size_t n) {
  if (p == 2) return euclidean(n);
  if (p == 1) return l1(n);
  throw std::invalid_argument("ProxSetup: p must be 1 or 2, got " + std::to_string(p));
}

double rho(std::size_t n, double q) {
  if (n < 8) {
    throw std::domain_error("rho: the sphere moment bound holds only for n >= 8, got n = " +
                            std::to_string(n));
  }
  if (!(q >= 2.0)) throw std::invalid_argument("rho: q must lie in [2, inf]");
  const double nd = static_cast<double>(n);
  const double cap = 16.0 * std::log(nd) - 8.0;
  if (std::isinf(q)) return cap / nd;
  return std::min(q - 1.0, cap) * std::pow(nd, 2.0 / q - 1.0);
}

double prox_value(const ProxSetup& setup, std::span<const double> x) {
  check_dim(setup, x.size(), "prox_value");
  if (setup.p == 2) return 0.5 * dot(x, x);
  const double r = norm_r(x, setup.kappa);
  return setup.a_n * r * r;
}

Vector grad_kappa_norm_sq(double kappa, std::span<const double> z) {
  Vector g(z.size(), 0.0);
  const double r = norm_r(z, kappa);
  if (r == 0.0) return g;
  // 2 r^(2-kappa) |z_i|^(kappa-1) = 2 r (|z_i|/r)^(kappa-1)
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0.0) continue;
    g[i] = std::copysign(2.0 * r * unit_pow(std::abs(z[i]) / r, kappa - 1.0), z[i]);
  }
  return g;
}

Vector prox_gradient(const ProxSetup& setup, std::span<const double> z) {
  check_dim(setup, z.size(), "prox_gradient");
  if (setup.p == 2) return Vector(z.begin(), z.end());
  Vector g = grad_kappa_norm_sq(setup.kappa, z);
  for (double& v : g) v *= setup.a_n;
  return g;
}

double bregman(const ProxSetup& setup, std::span<const double> z, std::span<const double> x) {
  check_dim(setup, z.size(), "bregman");
  check_dim(setup, x.size(), "bregman");
  if (setup.p == 2) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - z[i]) * (x[i] - z[i]);
    return 0.5 * s;
  }
  const Vector g = prox_gradient(setup, z);
  double lin = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) lin += g[i] * (x[i] - z[i]);
  return std::max(0.0, prox_value(setup, x) - prox_value(setup, z) - lin);
}

void kappa_linear_argmin(double kappa, std::span<const double> sh, std::span<double> out) {
  double peak = 0.0;  // max_i |sh_i| / 2
  for (double v : sh) peak = std::max(peak, std::abs(v) / 2.0);
  if (peak == 0.0) {
    for (double& v : out) v = 0.0;
    return;
  }
  // With a_i = |sh_i| / (2 peak) <= 1 and w_i = a_i^(1/(kappa-1)):
  //   u_i = sign(sh_i) peak w_i (sum_j w_j a_j)^((kappa-2)/kappa)
  const double inv_km1 = 1.0 / (kappa - 1.0);
  double scaled_sum = 0.0;
  for (std::size_t i = 0; i < sh.size(); ++i) {
    const double a = std::abs(sh[i]) / 2.0 / peak;
    const double w = unit_pow(a, inv_km1);
    scaled_sum += w * a;
    out[i] = std::copysign(w, sh[i]);
  }
  const double scale = peak * std::pow(scaled_sum, (kappa - 2.0) / kappa);
  for (double& v : out) v *= scale;
}

void mirror_step_into(const ProxSetup& setup, std::span<const double> z,
                      std::span<const double> s, std::span<double> out) {
  check_dim(setup, z.size(), "mirror_step");
  check_dim(setup, s.size(), "mirror_step");
  check_dim(setup, out.size(), "mirror_step");
  if (setup.p == 2) {
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] - s[i];
    return;
  }
  Vector sh = grad_kappa_norm_sq(setup.kappa, z);
  for (std::size_t i = 0; i < sh.size(); ++i) sh[i] -= s[i] / setup.a_n;
  kappa_linear_argmin(setup.kappa, sh, out);
}

MirrorIterate::MirrorIterate(const ProxSetup& setup, std::span<const double> start)
    : setup_(setup), point_(start.begin(), start.end()) {
  check_dim(setup, start.size(), "MirrorIterate");
  if (setup.p == 1) dual_ = grad_kappa_norm_sq(setup.kappa, start);
}

void MirrorIterate::step(std::span<const double> s) {
  check_dim(setup_, s.size(), "MirrorIterate::step");
  if (setup_.p == 2) {
    for (std::size_t i = 0; i < point_.size(); ++i) point_[i] -= s[i];
    return;
  }
  for (std::size_t i = 0; i < point_.size(); ++i) dual_[i] -= s[i] / setup_.a_n;
  kappa_linear_argmin(setup_.kappa, dual_, point_);
}

Vector mirror_step(const ProxSetup& setup, std::span<const double> z, std::span<const double> s) {
  Vector out(z.size());
  mirror_step_into(setup, z, s, out);
  return out;
}

}  // namespace ardfds
