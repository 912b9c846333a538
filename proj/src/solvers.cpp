#include "ardfds/solvers.hpp"

#include <cmath>
#include <limits>

namespace ardfds {

namespace {

constexpr Seed kDirectionTag = 0x646972656374e31ULL;
constexpr Seed kXiTag = 0x78692d73747265ULL;

void check_common(const NoisyProblem& problem, std::size_t x0_dim, std::size_t batch,
                  double smoothing) {
  if (x0_dim != problem.dim()) throw std::invalid_argument("solver: x0 has the wrong dimension");
  if (batch < 1) throw std::invalid_argument("solver: batch size must be at least 1");
  if (!(smoothing > 0.0)) throw std::invalid_argument("solver: smoothing t must be positive");
}

void check_params(const NoisyProblem& problem, const SolverParams& params, std::size_t x0_dim) {
  check_common(problem, x0_dim, params.batch, params.smoothing);
  if (params.setup.dim != problem.dim()) {
    throw std::invalid_argument("solver: proximal setup dimension differs from the problem");
  }
  if (!(params.gamma > 0.0)) throw std::invalid_argument("solver: gamma must be positive");
  if (!(params.lipschitz_grad > 0.0)) throw std::invalid_argument("solver: L2 must be positive");
}

double checked_slope(double slope, std::size_t k) {
  if (!std::isfinite(slope)) throw SolverAbort(k, "non-finite oracle value");
  return slope;
}

}  // namespace

double ardfds_alpha(const SolverParams& params, std::size_t k) {
  const double n = static_cast<double>(params.setup.dim);
  return params.gamma * (static_cast<double>(k) + 2.0) /
         (96.0 * n * n * rho(params.setup) * params.lipschitz_grad);
}

double rdfds_alpha(const SolverParams& params) {
  const double n = static_cast<double>(params.setup.dim);
  return params.gamma / (48.0 * n * rho(params.setup) * params.lipschitz_grad);
}

// ---------------------------------------------------------------------------

ArdfdsSolver::ArdfdsSolver(const NoisyProblem& problem, const SolverParams& params,
                           std::span<const double> x0)
    : problem_(problem),
      params_(params),
      alpha_unit_(ardfds_alpha(params, 0) / 2.0),
      sampler_(problem.dim(), mix64(params.base_seed ^ kDirectionTag)),
      xi_base_(mix64(params.base_seed ^ kXiTag)),
      x_(x0.begin(), x0.end()),
      y_(x_),
      z_(params.setup, x0),
      e_(problem.dim()),
      s_(problem.dim()) {
  check_params(problem, params, x0.size());
}

void ArdfdsSolver::step() {
  const std::size_t n = x_.size();
  const double tau = ardfds_tau(k_);
  const Vector& z = z_.point();
  sampler_.sample_into(e_);
  for (std::size_t i = 0; i < n; ++i) x_[i] = tau * z[i] + (1.0 - tau) * y_[i];

  const double slope = checked_slope(
      batch_slope(problem_, x_, e_, params_.smoothing, params_.batch, {xi_base_, k_}, ledger_,
                  params_.exec),
      k_);

  const double grad_step = slope / (2.0 * params_.lipschitz_grad);
  for (std::size_t i = 0; i < n; ++i) y_[i] = x_[i] - grad_step * e_[i];

  // alpha_{k+1} n g~ = (k + 2) alpha_unit n slope e
  const double mirror_scale = (static_cast<double>(k_) + 2.0) * alpha_unit_ *
                              static_cast<double>(n) * slope;
  for (std::size_t i = 0; i < n; ++i) s_[i] = mirror_scale * e_[i];
  z_.step(s_);
  if (!all_finite(z_.point()) || !all_finite(y_)) throw SolverAbort(k_, "non-finite iterate");
  ++k_;
}

// ---------------------------------------------------------------------------

RdfdsSolver::RdfdsSolver(const NoisyProblem& problem, const SolverParams& params,
                         std::span<const double> x0)
    : problem_(problem),
      params_(params),
      alpha_(rdfds_alpha(params)),
      sampler_(problem.dim(), mix64(params.base_seed ^ kDirectionTag)),
      xi_base_(mix64(params.base_seed ^ kXiTag)),
      x_(params.setup, x0),
      sum_(problem.dim(), 0.0),
      average_(x0.begin(), x0.end()),
      e_(problem.dim()),
      s_(problem.dim()) {
  check_params(problem, params, x0.size());
}

void RdfdsSolver::step() {
  const Vector& x = x_.point();
  const std::size_t n = x.size();
  sampler_.sample_into(e_);
  const double slope = checked_slope(
      batch_slope(problem_, x, e_, params_.smoothing, params_.batch, {xi_base_, k_}, ledger_,
                  params_.exec),
      k_);

  for (std::size_t i = 0; i < n; ++i) sum_[i] += x[i];
  const double mirror_scale = alpha_ * static_cast<double>(n) * slope;
  for (std::size_t i = 0; i < n; ++i) s_[i] = mirror_scale * e_[i];
  x_.step(s_);
  if (!all_finite(x)) throw SolverAbort(k_, "non-finite iterate");
  ++k_;

  const double inv = 1.0 / static_cast<double>(k_);
  for (std::size_t i = 0; i < n; ++i) average_[i] = sum_[i] * inv;
}

// ---------------------------------------------------------------------------

RspgfSolver::RspgfSolver(const NoisyProblem& problem, const RspgfParams& params,
                         std::span<const double> x0)
    : problem_(problem),
      params_(params),
      step_(params.step > 0.0 ? params.step
                              : 1.0 / (4.0 * (static_cast<double>(problem.dim()) + 4.0) *
                                       problem.lipschitz_grad())),
      sampler_(problem.dim(), mix64(params.base_seed ^ kDirectionTag)),
      xi_base_(mix64(params.base_seed ^ kXiTag)),
      x_(x0.begin(), x0.end()),
      e_(problem.dim()) {
  check_common(problem, x0.size(), params.batch, params.smoothing);
}

void RspgfSolver::step() {
  const std::size_t n = x_.size();
  sampler_.sample_into(e_);
  const double slope = checked_slope(
      batch_slope(problem_, x_, e_, params_.smoothing, params_.batch, {xi_base_, k_}, ledger_,
                  params_.exec),
      k_);
  const double scale = step_ * static_cast<double>(n) * slope;
  for (std::size_t i = 0; i < n; ++i) x_[i] -= scale * e_[i];
  if (!all_finite(x_)) throw SolverAbort(k_, "non-finite iterate");
  ++k_;
}

// ---------------------------------------------------------------------------

TraceRecorder::TraceRecorder(const CleanObjective* probe, bool track_best, bool wall_clock)
    : probe_(probe),
      track_best_(track_best),
      wall_clock_(wall_clock),
      f_star_(probe ? probe->optimal_value() : std::nullopt),
      start_(std::chrono::steady_clock::now()) {}

void TraceRecorder::record(std::size_t iteration, std::uint64_t calls,
                           std::span<const double> point) {
  TraceRecord r;
  r.iteration = iteration;
  r.oracle_calls = calls;
  if (wall_clock_) {
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  if (probe_ == nullptr) {
    r.f_gap = r.rel_acc = std::numeric_limits<double>::quiet_NaN();
    trace_.records.push_back(r);
    return;
  }

  const double value = probe_->value(point);
  if (!std::isfinite(value)) throw SolverAbort(iteration, "non-finite objective value");
  double gap = f_star_ ? value - *f_star_ : value;
  if (trace_.records.empty()) {
    gap0_ = gap;
    best_gap_ = gap;
    if (track_best_) best_point_ = Vector(point.begin(), point.end());
  } else if (track_best_) {
    if (gap < best_gap_) {
      best_gap_ = gap;
      best_point_ = Vector(point.begin(), point.end());
    }
    gap = best_gap_;
  }
  r.f_gap = gap;
  r.rel_acc = gap0_ != 0.0 ? gap / gap0_ : 0.0;
  trace_.records.push_back(r);
}

double TraceRecorder::last_rel_acc() const {
  return trace_.records.empty() ? std::numeric_limits<double>::quiet_NaN()
                                : trace_.records.back().rel_acc;
}

SolverResult run_solver(IterativeSolver& solver, std::size_t n_iters, const RunOptions& options,
                        bool best_iterate) {
  const std::size_t every = std::max<std::size_t>(1, options.record_every);
  TraceRecorder recorder(options.probe, best_iterate, options.wall_clock);
  recorder.record(solver.iteration(), solver.oracle_calls(), solver.output());
  for (std::size_t k = 1; k <= n_iters; ++k) {
    solver.step();
    if (options.callback) options.callback(solver.view());
    if (k % every == 0 || k == n_iters) {
      recorder.record(solver.iteration(), solver.oracle_calls(), solver.output());
    }
  }

  SolverResult result;
  const auto out = solver.output();
  result.point = best_iterate && recorder.best_point() ? *recorder.best_point()
                                                       : Vector(out.begin(), out.end());
  result.trace = recorder.take();
  result.oracle_calls = solver.oracle_calls();
  result.iterations = solver.iteration();
  return result;
}

SolverResult ardfds(const NoisyProblem& problem, const SolverParams& params,
                    std::span<const double> x0, const RunOptions& options) {
  ArdfdsSolver solver(problem, params, x0);
  return run_solver(solver, params.n_iters, options);
}

SolverResult rdfds(const NoisyProblem& problem, const SolverParams& params,
                   std::span<const double> x0, const RunOptions& options) {
  RdfdsSolver solver(problem, params, x0);
  return run_solver(solver, params.n_iters, options);
}

SolverResult rspgf_baseline(const NoisyProblem& problem, const RspgfParams& params,
                            std::span<const double> x0, const RunOptions& options) {
  RspgfSolver solver(problem, params, x0);
  return run_solver(solver, params.n_iters, options, true);
}

}  // namespace ardfds
