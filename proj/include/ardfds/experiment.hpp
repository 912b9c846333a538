#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ardfds/nesterov.hpp"
#include "ardfds/planner.hpp"
#include "ardfds/solvers.hpp"

namespace ardfds {

/// One Nesterov-function experiment. Unset optionals are resolved at run time
/// (see resolve_experiment).
struct ExperimentConfig {
  Method method = Method::ardfds;
  int p = 2;
  std::optional<double> gamma;
  std::size_t n = 100;
  double lipschitz_grad = 10.0;
  std::optional<double> sigma2;
  std::optional<double> delta;
  double eps = 1e-3;
  std::vector<Seed> seeds;
  std::size_t max_iters = 0;  // 0: planner N
  std::size_t batch = 0;      // 0: planner m
  std::optional<double> smoothing;
  std::size_t record_every = 0;  // 0: max(1, N / 2000)
  std::optional<double> until_rel_acc;
  std::optional<double> rspgf_step;
  Seed problem_seed = 0;
  double c_scale = 1.0;
  /// "shifted" (x* + L2 e_1) or "zero".
  std::string x0_rule = "shifted";
  bool wall_clock = false;
  int workers = 0;  // 0: OpenMP default
};

/// The stepsize scales tuned for this benchmark: 8 / 2000 for the accelerated
/// method with p = 2 / p = 1, 32 / 1000 for the plain one. 1 for the baseline.
double default_gamma(Method method, int p);

/// Largest sigma^2 for which the accelerated l1 recipe still gives batch size 1:
/// eps^(3/2) sqrt(n / ln n) sqrt(L2 / theta_1).
double unit_batch_sigma2(double eps, std::size_t n, double lipschitz, double theta1);

/// Values derived from a config before any solver runs.
struct ResolvedSettings {
  double gamma = 1.0;
  double sigma2 = 0.0;
  double delta = 0.0;
  double theta = 0.0;   // V[x0](x*) in the run's setup
  double theta1 = 0.0;  // V[x0](x*) in the l1 setup
  Plan plan;
  std::size_t n_iters = 0;
  std::size_t batch = 1;
  double smoothing = 0.0;
  std::size_t record_every = 1;
  double initial_gap = 0.0;
  double rspgf_step = 0.0;
};

ResolvedSettings resolve_experiment(const ExperimentConfig& config);

/// x0 selected by config.x0_rule.
Vector experiment_x0(const ExperimentConfig& config, const NesterovProblem& problem);

struct SeedRun {
  Seed seed = 0;
  ConvergenceTrace trace;
  std::uint64_t oracle_calls = 0;
  std::size_t iterations = 0;
  double final_rel_acc = 0.0;
  double runtime_s = 0.0;
};

struct AggregateRecord {
  std::size_t iteration = 0;
  std::uint64_t oracle_calls = 0;
  double rel_acc_mean = 0.0;
  double rel_acc_min = 0.0;
  double rel_acc_max = 0.0;
  double f_gap_mean = 0.0;
  double elapsed_s = 0.0;  // slowest seed
};

struct ExperimentResult {
  ExperimentConfig config;
  ResolvedSettings settings;
  std::vector<SeedRun> runs;
  std::vector<AggregateRecord> aggregate;
  /// Set when until_rel_acc stopped the run before n_iters.
  std::optional<std::size_t> stop_iteration;
};

/// A solver aborted on one seed.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::size_t seed_index, Seed seed, const std::string& what)
      : std::runtime_error("seed #" + std::to_string(seed_index) + " (" + std::to_string(seed) +
                           "): " + what),
        seed_index_(seed_index),
        seed_(seed) {}
  std::size_t seed_index() const { return seed_index_; }
  Seed seed() const { return seed_; }

 private:
  std::size_t seed_index_;
  Seed seed_;
};

/// Runs every seed in lockstep blocks of record_every iterations, seeds in
/// parallel. After each block the mean relative accuracy is aggregated and the
/// optional early stop is checked, so the stop point and all traces are
/// independent of the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Seeds 1..count.
std::vector<Seed> default_seeds(std::size_t count);

}  // namespace ardfds
