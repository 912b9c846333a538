#include "ardfds/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ardfds {

std::string to_string(Method m) {
  switch (m) {
    case Method::ardfds: return "ardfds";
    case Method::rdfds: return "rdfds";
    case Method::rspgf: return "rspgf";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "ardfds") return Method::ardfds;
  if (name == "rdfds") return Method::rdfds;
  if (name == "rspgf") return Method::rspgf;
  throw std::invalid_argument("unknown method '" + name + "' (expected ardfds, rdfds or rspgf)");
}

namespace {

std::size_t ceil_count(double v) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

}  // namespace

Plan plan_parameters(const PlanRequest& r) {
  if (!(r.eps > 0.0) || !(r.lipschitz_grad > 0.0) || !(r.theta > 0.0) || !(r.c_scale > 0.0) ||
      r.sigma2 < 0.0 || r.n < 8) {
    throw std::invalid_argument("plan_parameters: need eps, L2, theta, c_scale > 0, sigma2 >= 0, n >= 8");
  }
  if (r.p != 1 && r.p != 2) throw std::invalid_argument("plan_parameters: p must be 1 or 2");

  const double n = static_cast<double>(r.n);
  const double ln_n = std::log(n);
  const double eps = r.eps;
  const double l2 = r.lipschitz_grad;
  const double th = r.theta;
  const double c = r.c_scale;
  const bool l1 = r.p == 1;

  double iters = 0.0, batch = 0.0, delta = 0.0, t = 0.0;
  if (r.method == Method::ardfds) {
    if (l1) {
      iters = std::sqrt(n * ln_n * l2 * th / eps);
      batch = r.sigma2 / std::pow(eps, 1.5) * std::sqrt(th * ln_n / (n * l2));
      delta = std::min(std::pow(eps, 1.5) / std::sqrt(l2 * th * n * ln_n), eps * eps / (n * l2 * th));
      t = std::min(std::pow(eps, 0.75) / std::pow(l2 * l2 * l2 * th * n * ln_n, 0.25),
                   eps / (l2 * std::sqrt(n * th)));
    } else {
      iters = std::sqrt(n * n * l2 * th / eps);
      batch = r.sigma2 / std::pow(eps, 1.5) * std::sqrt(th / l2);
      delta = std::min(std::pow(eps, 1.5) / (n * std::sqrt(l2 * th)), eps * eps / (n * l2 * th));
      t = std::min(std::pow(eps, 0.75) / std::pow(n * n * l2 * l2 * l2 * th, 0.25),
                   eps / (l2 * std::sqrt(n * th)));
    }
  } else {
    iters = (l1 ? ln_n : n) * l2 * th / eps;
    batch = r.sigma2 / (l2 * eps);
    delta = std::min(eps / n, eps * eps / (n * l2 * th));
    t = std::min(std::sqrt(eps / (n * l2)), eps / std::sqrt(n * l2 * l2 * th));
  }

  Plan plan;
  plan.n_iters = ceil_count(c * iters);
  plan.batch = ceil_count(c * batch);
  plan.delta_budget = c * delta;
  plan.smoothing = c * t;
  if (r.delta_actual && *r.delta_actual > 0.0) {
    plan.smoothing = std::max(plan.smoothing, 2.0 * std::sqrt(*r.delta_actual / l2));
  }
  return plan;
}

}  // namespace ardfds
