#include "ardfds/oracle.hpp"

#include <stdexcept>
#include <string>

namespace ardfds {

std::pair<double, double> evaluate_pair(const NoisyProblem& problem, std::span<const double> x,
                                        std::span<const double> y, Seed xi, OracleLedger& ledger) {
  if (x.size() != problem.dim() || y.size() != problem.dim()) {
    throw std::invalid_argument("evaluate_pair: expected points of dimension " +
                                std::to_string(problem.dim()) + ", got " +
                                std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  ledger.record();
  return {problem.observe(x, xi), problem.observe(y, xi)};
}

}  // namespace ardfds
