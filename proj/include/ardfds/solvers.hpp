#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ardfds/estimator.hpp"
#include "ardfds/oracle.hpp"
#include "ardfds/prox.hpp"

namespace ardfds {

struct SolverParams {
  std::size_t n_iters = 1;
  std::size_t batch = 1;
  double smoothing = 1e-6;
  /// Scale on the theoretical stepsizes alpha. tau is never rescaled.
  double gamma = 1.0;
  double lipschitz_grad = 1.0;
  ProxSetup setup;
  Seed base_seed = 0;
  Execution exec = Execution::parallel;
};

/// alpha_{k+1} = gamma (k + 2) / (96 n^2 rho_n L2), used at iteration k = 0, 1, ...
double ardfds_alpha(const SolverParams& params, std::size_t k);
/// tau_k = 2 / (k + 2).
inline double ardfds_tau(std::size_t k) { return 2.0 / (static_cast<double>(k) + 2.0); }
/// alpha = gamma / (48 n rho_n L2).
double rdfds_alpha(const SolverParams& params);

/// State handed to per-iteration hooks. For RDFDS and RSPGF, y and z alias x.
struct IterationView {
  std::size_t iteration = 0;
  std::span<const double> x, y, z;
  std::uint64_t oracle_calls = 0;
};
using IterationCallback = std::function<void(const IterationView&)>;

/// Raised when an oracle value or an iterate stops being finite.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(std::size_t iteration, const std::string& what)
      : std::runtime_error(what + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}
  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

/// A solver advanced one iteration at a time. Each instance owns its direction
/// sampler and oracle ledger.
class IterativeSolver {
 public:
  virtual ~IterativeSolver() = default;

  virtual void step() = 0;
  /// The point the method would return if stopped now (y_k, running average, x_k).
  virtual std::span<const double> output() const = 0;
  virtual IterationView view() const = 0;

  std::size_t iteration() const { return k_; }
  std::uint64_t oracle_calls() const { return ledger_.calls(); }

 protected:
  std::size_t k_ = 0;
  OracleLedger ledger_;
};

/// Accelerated randomized derivative-free directional search: linear coupling
/// of a Euclidean step 1/(2 L2) along the estimate with a mirror step in the
/// chosen proximal setup.
class ArdfdsSolver final : public IterativeSolver {
 public:
  ArdfdsSolver(const NoisyProblem& problem, const SolverParams& params, std::span<const double> x0);

  void step() override;
  std::span<const double> output() const override { return y_; }
  IterationView view() const override { return {k_, x_, y_, z_.point(), ledger_.calls()}; }

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::span<const double> z() const { return z_.point(); }

 private:
  const NoisyProblem& problem_;
  SolverParams params_;
  double alpha_unit_;  // gamma / (96 n^2 rho_n L2)
  SphereSampler sampler_;
  Seed xi_base_;
  Vector x_, y_;
  MirrorIterate z_;
  Vector e_, s_;
};

/// Randomized derivative-free directional search: mirror steps with constant
/// alpha; returns the average of x_0 .. x_{k-1}.
class RdfdsSolver final : public IterativeSolver {
 public:
  RdfdsSolver(const NoisyProblem& problem, const SolverParams& params, std::span<const double> x0);

  void step() override;
  std::span<const double> output() const override { return average_; }
  IterationView view() const override {
    return {k_, x_.point(), x_.point(), x_.point(), ledger_.calls()};
  }

  std::span<const double> current() const { return x_.point(); }

 private:
  const NoisyProblem& problem_;
  SolverParams params_;
  double alpha_;
  SphereSampler sampler_;
  Seed xi_base_;
  MirrorIterate x_;
  Vector sum_, average_, e_, s_;
};

struct RspgfParams {
  std::size_t n_iters = 1;
  std::size_t batch = 1;
  double smoothing = 1e-6;
  /// 0 selects 1 / (4 (n + 4) L2).
  double step = 0.0;
  Seed base_seed = 0;
  Execution exec = Execution::parallel;
};

/// Random gradient-free baseline: x_{k+1} = x_k - step * n * g~(x_k). The factor
/// n makes the sphere estimate unbiased for grad f, which is the scaling of the
/// Gaussian-direction estimator this baseline is modeled on.
class RspgfSolver final : public IterativeSolver {
 public:
  RspgfSolver(const NoisyProblem& problem, const RspgfParams& params, std::span<const double> x0);

  void step() override;
  std::span<const double> output() const override { return x_; }
  IterationView view() const override { return {k_, x_, x_, x_, ledger_.calls()}; }

  double step_size() const { return step_; }

 private:
  const NoisyProblem& problem_;
  RspgfParams params_;
  double step_;
  SphereSampler sampler_;
  Seed xi_base_;
  Vector x_, e_;
};

struct TraceRecord {
  std::size_t iteration = 0;
  std::uint64_t oracle_calls = 0;
  double rel_acc = 0.0;  // f_gap / f_gap at k = 0
  double f_gap = 0.0;    // f - f*, or f itself when f* is unknown
  double elapsed_s = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;
};

/// Turns solver outputs into trace records using the metrics-only objective.
/// With track_best, records carry the best gap seen so far and the best point
/// is retained.
class TraceRecorder {
 public:
  TraceRecorder(const CleanObjective* probe, bool track_best = false, bool wall_clock = false);

  void record(std::size_t iteration, std::uint64_t calls, std::span<const double> point);

  const ConvergenceTrace& trace() const { return trace_; }
  ConvergenceTrace take() { return std::move(trace_); }
  const std::optional<Vector>& best_point() const { return best_point_; }
  double last_rel_acc() const;

 private:
  const CleanObjective* probe_;
  bool track_best_;
  bool wall_clock_;
  std::optional<double> f_star_;
  double gap0_ = 0.0;
  double best_gap_ = 0.0;
  std::optional<Vector> best_point_;
  std::chrono::steady_clock::time_point start_;
  ConvergenceTrace trace_;
};

struct RunOptions {
  const CleanObjective* probe = nullptr;
  /// Record every j-th iteration (plus k = 0 and the last one).
  std::size_t record_every = 1;
  bool wall_clock = false;
  IterationCallback callback;
};

struct SolverResult {
  Vector point;
  ConvergenceTrace trace;
  std::uint64_t oracle_calls = 0;
  std::size_t iterations = 0;
};

/// Runs n_iters steps, recording the trace. With best_iterate (and a probe) the
/// returned point is the best recorded one rather than the last output.
SolverResult run_solver(IterativeSolver& solver, std::size_t n_iters, const RunOptions& options,
                        bool best_iterate = false);

SolverResult ardfds(const NoisyProblem& problem, const SolverParams& params,
                    std::span<const double> x0, const RunOptions& options = {});
SolverResult rdfds(const NoisyProblem& problem, const SolverParams& params,
                   std::span<const double> x0, const RunOptions& options = {});
SolverResult rspgf_baseline(const NoisyProblem& problem, const RspgfParams& params,
                            std::span<const double> x0, const RunOptions& options = {});

}  // namespace ardfds
