#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace ardfds {

enum class Method { ardfds, rdfds, rspgf };

std::string to_string(Method m);
/// Accepts "ardfds", "rdfds", "rspgf"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& name);

struct PlanRequest {
  Method method = Method::ardfds;
  int p = 2;
  double eps = 1e-3;
  double lipschitz_grad = 1.0;
  double sigma2 = 0.0;
  double theta = 1.0;  // V[x0](x*) in the chosen setup
  std::size_t n = 8;
  /// Multiplies every order-of-magnitude recipe. Not a derived constant.
  double c_scale = 1.0;
  /// When the actual noise level is known, t is floored at 2 sqrt(delta / L2).
  std::optional<double> delta_actual;
};

struct Plan {
  std::size_t n_iters = 0;
  std::size_t batch = 1;
  double smoothing = 0.0;
  double delta_budget = 0.0;
};

/// Iteration count, batch size, smoothing and tolerable noise from the
/// parameter recipes of the accelerated (ardfds) and plain (rdfds) methods.
/// rspgf is planned with the Euclidean rdfds recipe.
Plan plan_parameters(const PlanRequest& request);

}  // namespace ardfds
