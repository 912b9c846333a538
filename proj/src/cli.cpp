#include "ardfds/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "ardfds/experiment.hpp"
#include "ardfds/planner.hpp"
#include "ardfds/prox.hpp"
#include "ardfds/sphere_moments.hpp"
#include "ardfds/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ardfds {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnwritableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_q(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  const double q = std::stod(s);
  if (q != 2.0) throw UsageError("q must be 2 or inf, got " + s);
  return q;
}

// ---------------------------------------------------------------------------
// plan

struct PlanFlags {
  std::string method = "ardfds";
  int p = 2;
  std::size_t n = 0;
  double eps = 0.0;
  double l2 = 10.0;
  double sigma2 = 0.0;
  double theta = 0.0;
  std::string preset;
  double c_scale = 1.0;
  double delta_actual = 0.0;
};

int cmd_plan(const PlanFlags& f, bool theta_given, bool preset_given, std::ostream& out) {
  if (theta_given == preset_given) throw UsageError("plan: give exactly one of --theta or --preset");
  PlanRequest r;
  r.method = parse_method(f.method);
  r.p = f.p;
  r.n = f.n;
  r.eps = f.eps;
  r.lipschitz_grad = f.l2;
  r.sigma2 = f.sigma2;
  r.c_scale = f.c_scale;
  if (f.delta_actual > 0.0) r.delta_actual = f.delta_actual;
  if (preset_given) {
    if (f.preset != "nesterov") throw UsageError("plan: unknown preset '" + f.preset + "'");
    const NesterovProblem prob(f.n, f.l2, 0.0, 0.0);
    r.theta = bregman(ProxSetup::make(f.p, f.n), make_x0(prob), prob.x_star());
  } else {
    r.theta = f.theta;
  }
  const Plan plan = plan_parameters(r);

  out << "method  " << to_string(r.method) << "\n"
      << "p       " << r.p << "\n"
      << "n       " << r.n << "\n"
      << "theta   " << format_number(r.theta) << "\n"
      << "N       " << plan.n_iters << "\n"
      << "m       " << plan.batch << "\n"
      << "t       " << format_number(plan.smoothing) << "\n"
      << "Delta   " << format_number(plan.delta_budget) << "\n";
  out << json{{"method", to_string(r.method)},
              {"p", r.p},
              {"n", r.n},
              {"eps", r.eps},
              {"L2", r.lipschitz_grad},
              {"sigma2", r.sigma2},
              {"theta", r.theta},
              {"c_scale", r.c_scale},
              {"N", plan.n_iters},
              {"m", plan.batch},
              {"t", plan.smoothing},
              {"delta_budget", plan.delta_budget}}
             .dump()
      << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run / gamma-grid

struct ExperimentFlags {
  std::map<std::string, std::pair<std::string, CLI::Option*>> values;  // config key -> flag
  std::size_t seed_count = 10;
  CLI::Option* seed_count_opt = nullptr;
  bool wall_clock = false;
  CLI::Option* wall_clock_opt = nullptr;
  std::string config_file;
  std::string manifest_file;
  std::string out_dir;
  CLI::Option* config_opt = nullptr;
  CLI::Option* manifest_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  const std::vector<std::pair<std::string, std::string>> table = {
      {"method", "--method"},         {"p", "--p"},
      {"gamma", "--gamma"},           {"n", "--n"},
      {"L2", "--L2"},                 {"sigma2", "--sigma2"},
      {"delta", "--delta"},           {"eps", "--eps"},
      {"seeds", "--seed-list"},       {"max_iters", "--max-iters"},
      {"batch", "--batch"},           {"t", "--t"},
      {"record_every", "--record-every"}, {"until_rel_acc", "--until-rel-acc"},
      {"rspgf_step", "--rspgf-step"}, {"problem_seed", "--problem-seed"},
      {"c_scale", "--c-scale"},       {"x0", "--x0"},
      {"workers", "--workers"},
  };
  for (const auto& [key, flag] : table) {
    auto& slot = f.values[key];
    slot.second = cmd->add_option(flag, slot.first, "experiment field '" + key + "'");
  }
  f.seed_count_opt = cmd->add_option("--seeds", f.seed_count, "number of seeds (1..k), default 10");
  f.wall_clock_opt = cmd->add_flag("--wall-clock", f.wall_clock,
                                   "record elapsed seconds in traces (breaks byte-identity)");
  f.config_opt = cmd->add_option("--config", f.config_file, "flat key = value config file");
  f.manifest_opt = cmd->add_option("--manifest", f.manifest_file, "re-run from a manifest.json");
  f.out_opt = cmd->add_option("--out", f.out_dir, std::string("output directory (default $") +
                                                      kOutDirEnv + " or ./ardfds_out)");
  f.config_opt->excludes(f.manifest_opt);
}

ExperimentConfig build_config(const ExperimentFlags& f) {
  ExperimentConfig c;
  c.seeds = default_seeds(10);
  if (f.manifest_opt->count() > 0) {
    std::ifstream in(f.manifest_file);
    if (!in) throw UsageError("cannot read manifest " + f.manifest_file);
    c = config_from_json(json::parse(in).at("config"));
  }
  if (f.config_opt->count() > 0) {
    std::ifstream in(f.config_file);
    if (!in) throw UsageError("cannot read config " + f.config_file);
    for (const auto& [k, v] : parse_key_values(in)) apply_config_value(c, k, v);
  }
  if (f.seed_count_opt->count() > 0) c.seeds = default_seeds(f.seed_count);
  for (const auto& [key, slot] : f.values) {
    if (slot.second->count() > 0) apply_config_value(c, key, slot.first);
  }
  if (f.wall_clock_opt->count() > 0) c.wall_clock = f.wall_clock;
  resolve_experiment(c);  // validates
  return c;
}

fs::path prepare_out_dir(const ExperimentFlags& f) {
  fs::path dir;
  if (f.out_opt->count() > 0) {
    dir = f.out_dir;
  } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    dir = env;
  } else {
    dir = "ardfds_out";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream test(probe);
    if (ec || !test) throw UnwritableError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  os << content;
  if (!os) throw UnwritableError("failed to write " + path.string());
}

std::string trace_file_name(Seed seed) { return "trace_seed" + std::to_string(seed) + ".csv"; }

int cmd_run(const ExperimentFlags& f, std::ostream& out) {
  const ExperimentConfig config = build_config(f);
  const fs::path dir = prepare_out_dir(f);
  const ExperimentResult result = run_experiment(config);

  std::vector<std::string> files;
  for (const SeedRun& r : result.runs) {
    std::ostringstream os;
    write_trace_csv(os, r.trace);
    files.push_back(trace_file_name(r.seed));
    write_file(dir / files.back(), os.str());
  }
  std::ostringstream agg;
  write_aggregate_csv(agg, result.aggregate);
  write_file(dir / "aggregate.csv", agg.str());
  write_file(dir / "manifest.json", manifest_json(result, files).dump(2) + "\n");

  const AggregateRecord& last = result.aggregate.back();
  out << to_string(config.method) << " p=" << config.p << " n=" << config.n
      << " gamma=" << format_number(result.settings.gamma) << " seeds=" << config.seeds.size()
      << "\n";
  out << "iterations " << last.iteration << ", oracle calls per seed " << last.oracle_calls
      << ", mean relative accuracy " << format_number(last.rel_acc_mean) << "\n";
  if (result.stop_iteration) out << "stopped early at iteration " << *result.stop_iteration << "\n";
  out << "wrote " << files.size() + 1 << " CSV files and manifest.json to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_gamma_grid(const ExperimentFlags& f, const std::string& gammas, std::ostream& out) {
  ExperimentConfig config = build_config(f);
  std::vector<double> grid;
  for (const std::string& g : split_list(gammas)) grid.push_back(std::stod(g));
  if (grid.empty()) throw UsageError("gamma-grid: --gammas is empty");
  const fs::path dir = prepare_out_dir(f);

  json summary = json::array();
  out << "gamma,final_rel_acc_mean,iterations\n";
  for (double g : grid) {
    config.gamma = g;
    const ExperimentResult result = run_experiment(config);
    std::ostringstream agg;
    write_aggregate_csv(agg, result.aggregate);
    const std::string name = "aggregate_gamma_" + format_number(g) + ".csv";
    write_file(dir / name, agg.str());
    const AggregateRecord& last = result.aggregate.back();
    summary.push_back({{"gamma", g},
                       {"aggregate", name},
                       {"final_rel_acc_mean", last.rel_acc_mean},
                       {"iterations", last.iteration},
                       {"stop_iteration", result.stop_iteration ? json(*result.stop_iteration)
                                                                : json(nullptr)}});
    out << format_number(g) << ',' << format_number(last.rel_acc_mean) << ',' << last.iteration
        << "\n";
  }
  config.gamma.reset();
  write_file(dir / "gamma_grid.json",
             json{{"config", config_to_json(config)}, {"grid", summary}}.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify-lemma1

int cmd_verify_lemma1(const std::string& ns, const std::string& qs, std::size_t samples,
                      Seed seed, int workers, std::ostream& out, std::ostream& err) {
  std::vector<std::size_t> dims;
  for (const std::string& s : split_list(ns)) dims.push_back(std::stoull(s));
  std::vector<double> qvals;
  for (const std::string& s : split_list(qs)) qvals.push_back(parse_q(s));
  if (dims.empty() || qvals.empty() || samples < 2) throw UsageError("verify-lemma1: empty grid");
  for (std::size_t n : dims) {
    if (n < 8) {
      err << "verify-lemma1: refusing n = " << n
          << ": the sphere moment bounds are only stated for n >= 8\n";
      return kExitUsage;
    }
  }
  if (workers > 0) omp_set_num_threads(workers);

  bool all_pass = true;
  out << "n,q,rho,bound_norm,mean_norm,se_norm,bound_product,mean_product,se_product,result\n";
  for (std::size_t n : dims) {
    // fixed random s per n
    Vector s = SphereSampler(n, derive_seed(seed, n, 1)).sample();
    for (double& v : s) v *= 3.0;
    const double s_sq = dot(s, s);
    for (double q : qvals) {
      const double r = rho(n, q);
      const SphereMoments m = sphere_moments(n, q, samples, s, derive_seed(seed, n, 2));
      const double bound_product = 6.0 * r / static_cast<double>(n) * s_sq;
      const bool pass = m.norm_sq.mean <= r + 3.0 * m.norm_sq.std_error &&
                        m.product.mean <= bound_product + 3.0 * m.product.std_error;
      all_pass = all_pass && pass;
      out << n << ',' << (std::isinf(q) ? std::string("inf") : format_number(q)) << ','
          << format_number(r) << ',' << format_number(r) << ',' << format_number(m.norm_sq.mean)
          << ',' << format_number(m.norm_sq.std_error) << ',' << format_number(bound_product)
          << ',' << format_number(m.product.mean) << ',' << format_number(m.product.std_error)
          << ',' << (pass ? "PASS" : "FAIL") << "\n";
    }
  }
  return all_pass ? kExitOk : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derivative-free two-point stochastic convex optimization toolkit", "ardfds"};
  app.require_subcommand(1);

  PlanFlags pf;
  auto* plan = app.add_subcommand("plan", "plan N, m, t and the noise budget");
  plan->add_option("--method", pf.method, "ardfds or rdfds")->capture_default_str();
  plan->add_option("--p", pf.p, "proximal setup, 1 or 2")->capture_default_str();
  plan->add_option("--n", pf.n, "dimension (>= 8)")->required();
  plan->add_option("--eps", pf.eps, "target accuracy")->required();
  plan->add_option("--L2", pf.l2, "gradient Lipschitz constant")->capture_default_str();
  plan->add_option("--sigma2", pf.sigma2, "variance bound")->capture_default_str();
  auto* theta_opt = plan->add_option("--theta", pf.theta, "Bregman distance V[x0](x*)");
  auto* preset_opt = plan->add_option("--preset", pf.preset, "compute theta for a preset (nesterov)");
  plan->add_option("--c-scale", pf.c_scale, "constant multiplying every recipe")->capture_default_str();
  plan->add_option("--delta-actual", pf.delta_actual, "known noise level; floors t at 2 sqrt(delta/L2)");

  ExperimentFlags rf;
  auto* run = app.add_subcommand("run", "run a Nesterov-function experiment and write traces");
  add_experiment_flags(run, rf);

  ExperimentFlags gf;
  std::string gammas;
  auto* grid = app.add_subcommand("gamma-grid", "sweep the stepsize scale gamma");
  add_experiment_flags(grid, gf);
  grid->add_option("--gammas", gammas, "comma-separated gamma values")->required();

  std::string lemma_ns = "8,100,1000", lemma_qs = "2,inf";
  std::size_t lemma_samples = 100000;
  Seed lemma_seed = 1;
  int lemma_workers = 0;
  auto* lemma = app.add_subcommand("verify-lemma1", "Monte Carlo check of the sphere moment bounds");
  lemma->add_option("--n", lemma_ns, "comma-separated dimensions")->capture_default_str();
  lemma->add_option("--q", lemma_qs, "comma-separated dual indices (2, inf)")->capture_default_str();
  lemma->add_option("--samples", lemma_samples, "samples per (n, q)")->capture_default_str();
  lemma->add_option("--seed", lemma_seed, "base seed")->capture_default_str();
  lemma->add_option("--workers", lemma_workers, "OpenMP threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan(pf, theta_opt->count() > 0, preset_opt->count() > 0, out);
    if (run->parsed()) return cmd_run(rf, out);
    if (grid->parsed()) return cmd_gamma_grid(gf, gammas, out);
    if (lemma->parsed()) {
      return cmd_verify_lemma1(lemma_ns, lemma_qs, lemma_samples, lemma_seed, lemma_workers, out,
                               err);
    }
  } catch (const UnwritableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnwritable;
  } catch (const ExperimentError& e) {
    err << "error: solver aborted on seed index " << e.seed_index() << ": " << e.what() << "\n";
    return kExitSolverAbort;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ardfds
