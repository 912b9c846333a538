#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "ardfds/vector_ops.hpp"

namespace ardfds {

/// Identifies one realization of the stochastic component xi. Two evaluations
/// with the same seed see the same realization.
using Seed = std::uint64_t;

/// Black-box objective f(x) = E[F(x, xi)] observed through
/// f~(x, xi) = F(x, xi) + eta(x, xi) with |eta| <= delta_noise().
///
/// This is the only view of a problem that solvers receive. The exact objective
/// lives behind CleanObjective, which is reserved for metrics.
class NoisyProblem {
 public:
  virtual ~NoisyProblem() = default;

  virtual std::size_t dim() const = 0;

  /// One stochastic realization F(x, xi). Deterministic for a fixed seed.
  virtual double stochastic_value(std::span<const double> x, Seed xi) const = 0;

  /// Bounded additive noise eta(x). Zero unless overridden.
  virtual double adversarial_noise(std::span<const double> /*x*/) const { return 0.0; }

  /// The general eta(x, xi) form. Defaults to ignoring xi.
  virtual double coupled_noise(std::span<const double> x, Seed /*xi*/) const {
    return adversarial_noise(x);
  }

  virtual double delta_noise() const { return 0.0; }
  virtual double lipschitz_grad() const = 0;
  virtual double sigma2() const { return 0.0; }

  /// f~(x, xi) as returned by the oracle.
  double observe(std::span<const double> x, Seed xi) const {
    return stochastic_value(x, xi) + coupled_noise(x, xi);
  }
};

/// Exact objective value, for convergence metrics only.
class CleanObjective {
 public:
  virtual ~CleanObjective() = default;
  virtual double value(std::span<const double> x) const = 0;
  /// f* when it is known in closed form.
  virtual std::optional<double> optimal_value() const { return std::nullopt; }
};

/// Counts two-point oracle invocations. Safe to bump from several workers.
class OracleLedger {
 public:
  OracleLedger() = default;
  OracleLedger(const OracleLedger&) = delete;
  OracleLedger& operator=(const OracleLedger&) = delete;

  void record(std::uint64_t pairs = 1) { calls_.fetch_add(pairs, std::memory_order_relaxed); }
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> calls_{0};
};

inline std::uint64_t oracle_call_count(const OracleLedger& ledger) { return ledger.calls(); }

/// Two-point feedback: (f~(x, xi), f~(y, xi)) under one shared realization.
/// Throws std::invalid_argument on a dimension mismatch.
std::pair<double, double> evaluate_pair(const NoisyProblem& problem, std::span<const double> x,
                                        std::span<const double> y, Seed xi, OracleLedger& ledger);

}  // namespace ardfds
