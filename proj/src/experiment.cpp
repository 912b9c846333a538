#include "ardfds/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>

#include <omp.h>

#include "ardfds/prox.hpp"

namespace ardfds {

double default_gamma(Method method, int p) {
  switch (method) {
    case Method::ardfds: return p == 1 ? 2000.0 : 8.0;
    case Method::rdfds: return p == 1 ? 1000.0 : 32.0;
    case Method::rspgf: return 1.0;
  }
  return 1.0;
}

double unit_batch_sigma2(double eps, std::size_t n, double lipschitz, double theta1) {
  const double nd = static_cast<double>(n);
  return std::pow(eps, 1.5) * std::sqrt(nd / std::log(nd)) * std::sqrt(lipschitz / theta1);
}

std::vector<Seed> default_seeds(std::size_t count) {
  std::vector<Seed> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = i + 1;
  return seeds;
}

Vector experiment_x0(const ExperimentConfig& config, const NesterovProblem& problem) {
  if (config.x0_rule == "shifted") return make_x0(problem);
  if (config.x0_rule == "zero") return Vector(problem.dim(), 0.0);
  throw std::invalid_argument("unknown x0 rule '" + config.x0_rule + "' (expected shifted or zero)");
}

namespace {

void validate(const ExperimentConfig& c) {
  if (c.seeds.empty()) throw std::invalid_argument("experiment: seed list is empty");
  if (!(c.eps > 0.0)) throw std::invalid_argument("experiment: eps must be positive");
  if (!(c.lipschitz_grad > 0.0)) throw std::invalid_argument("experiment: L2 must be positive");
  if (c.p != 1 && c.p != 2) throw std::invalid_argument("experiment: p must be 1 or 2");
  if (c.n < 8) throw std::invalid_argument("experiment: n must be at least 8");
  if (c.method == Method::rspgf && c.p != 2) {
    throw std::invalid_argument("experiment: the rspgf baseline is Euclidean only (p = 2)");
  }
}

std::unique_ptr<IterativeSolver> make_solver(const ExperimentConfig& c, const ResolvedSettings& s,
                                             const NesterovProblem& problem,
                                             std::span<const double> x0, Seed seed) {
  if (c.method == Method::rspgf) {
    RspgfParams rp;
    rp.n_iters = s.n_iters;
    rp.batch = s.batch;
    rp.smoothing = s.smoothing;
    rp.step = s.rspgf_step;
    rp.base_seed = seed;
    return std::make_unique<RspgfSolver>(problem, rp, x0);
  }
  SolverParams sp;
  sp.n_iters = s.n_iters;
  sp.batch = s.batch;
  sp.smoothing = s.smoothing;
  sp.gamma = s.gamma;
  sp.lipschitz_grad = c.lipschitz_grad;
  sp.setup = ProxSetup::make(c.p, c.n);
  sp.base_seed = seed;
  if (c.method == Method::ardfds) return std::make_unique<ArdfdsSolver>(problem, sp, x0);
  return std::make_unique<RdfdsSolver>(problem, sp, x0);
}

}  // namespace

ResolvedSettings resolve_experiment(const ExperimentConfig& c) {
  validate(c);
  ResolvedSettings s;
  s.gamma = c.gamma.value_or(default_gamma(c.method, c.p));

  // Geometry terms only depend on x0 and x*, not on the noise.
  const NesterovProblem clean(c.n, c.lipschitz_grad, 0.0, 0.0, c.problem_seed);
  const Vector x0 = experiment_x0(c, clean);
  const ProxSetup l1 = ProxSetup::l1(c.n);
  const ProxSetup l2 = ProxSetup::euclidean(c.n);
  s.theta1 = bregman(l1, x0, clean.x_star());
  const double theta2 = bregman(l2, x0, clean.x_star());
  s.theta = c.p == 1 ? s.theta1 : theta2;
  s.initial_gap = clean.value(x0) - clean.f_star();

  s.sigma2 = c.sigma2.value_or(unit_batch_sigma2(c.eps, c.n, c.lipschitz_grad, s.theta1));

  if (c.delta) {
    s.delta = *c.delta;
  } else {
    // One problem for every method and setup: the tighter accelerated budget.
    PlanRequest r;
    r.method = Method::ardfds;
    r.eps = c.eps;
    r.lipschitz_grad = c.lipschitz_grad;
    r.sigma2 = s.sigma2;
    r.n = c.n;
    r.c_scale = c.c_scale;
    r.p = 1;
    r.theta = s.theta1;
    const double d1 = plan_parameters(r).delta_budget;
    r.p = 2;
    r.theta = theta2;
    s.delta = std::min(d1, plan_parameters(r).delta_budget);
  }

  PlanRequest req;
  req.method = c.method;
  req.p = c.p;
  req.eps = c.eps;
  req.lipschitz_grad = c.lipschitz_grad;
  req.sigma2 = s.sigma2;
  req.theta = s.theta;
  req.n = c.n;
  req.c_scale = c.c_scale;
  req.delta_actual = s.delta;
  s.plan = plan_parameters(req);

  s.n_iters = c.max_iters > 0 ? c.max_iters : s.plan.n_iters;
  s.batch = c.batch > 0 ? c.batch : s.plan.batch;
  s.smoothing = c.smoothing.value_or(s.plan.smoothing);
  s.record_every = c.record_every > 0 ? c.record_every : std::max<std::size_t>(1, s.n_iters / 2000);
  s.rspgf_step = c.rspgf_step.value_or(
      1.0 / (4.0 * (static_cast<double>(c.n) + 4.0) * c.lipschitz_grad));
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.config = config;
  result.settings = resolve_experiment(config);
  const ResolvedSettings& s = result.settings;

  const NesterovProblem problem(config.n, config.lipschitz_grad, std::sqrt(s.sigma2), s.delta,
                                config.problem_seed);
  const Vector x0 = experiment_x0(config, problem);
  const std::size_t seeds = config.seeds.size();
  const bool best = config.method == Method::rspgf;

  std::vector<std::unique_ptr<IterativeSolver>> solvers;
  std::vector<TraceRecorder> recorders;
  solvers.reserve(seeds);
  recorders.reserve(seeds);
  for (std::size_t i = 0; i < seeds; ++i) {
    solvers.push_back(make_solver(config, s, problem, x0, config.seeds[i]));
    recorders.emplace_back(&problem, best, config.wall_clock);
    recorders.back().record(0, 0, solvers.back()->output());
  }
  result.runs.resize(seeds);

  auto aggregate_last = [&]() {
    AggregateRecord a;
    const TraceRecord& first = recorders[0].trace().records.back();
    a.iteration = first.iteration;
    a.oracle_calls = first.oracle_calls;
    a.rel_acc_min = a.rel_acc_max = first.rel_acc;
    for (const TraceRecorder& rec : recorders) {
      const TraceRecord& r = rec.trace().records.back();
      a.rel_acc_mean += r.rel_acc;
      a.f_gap_mean += r.f_gap;
      a.rel_acc_min = std::min(a.rel_acc_min, r.rel_acc);
      a.rel_acc_max = std::max(a.rel_acc_max, r.rel_acc);
      a.elapsed_s = std::max(a.elapsed_s, r.elapsed_s);
    }
    a.rel_acc_mean /= static_cast<double>(seeds);
    a.f_gap_mean /= static_cast<double>(seeds);
    return a;
  };
  result.aggregate.push_back(aggregate_last());

  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(seeds);
  std::vector<double> runtime(seeds, 0.0);
  std::size_t k = 0;
  while (k < s.n_iters) {
    const std::size_t next = std::min(s.n_iters, k + s.record_every);
    const auto count = static_cast<std::int64_t>(seeds);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto start = std::chrono::steady_clock::now();
      try {
        IterativeSolver& solver = *solvers[i];
        while (solver.iteration() < next) solver.step();
        recorders[i].record(solver.iteration(), solver.oracle_calls(), solver.output());
      } catch (...) {
        errors[i] = std::current_exception();
      }
      runtime[i] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    for (std::size_t i = 0; i < seeds; ++i) {
      if (!errors[i]) continue;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& ex) {
        throw ExperimentError(i, config.seeds[i], ex.what());
      }
    }
    k = next;
    result.aggregate.push_back(aggregate_last());
    if (config.until_rel_acc && result.aggregate.back().rel_acc_mean <= *config.until_rel_acc) {
      result.stop_iteration = k;
      break;
    }
  }

  for (std::size_t i = 0; i < seeds; ++i) {
    SeedRun& run = result.runs[i];
    run.seed = config.seeds[i];
    run.oracle_calls = solvers[i]->oracle_calls();
    run.iterations = solvers[i]->iteration();
    run.final_rel_acc = recorders[i].last_rel_acc();
    run.runtime_s = runtime[i];
    run.trace = recorders[i].take();
  }
  return result;
}

}  // namespace ardfds
