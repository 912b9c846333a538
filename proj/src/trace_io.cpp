#include "ardfds/trace_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ardfds {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace) {
  os << kTraceHeader << '\n';
  for (const TraceRecord& r : trace.records) {
    os << r.iteration << ',' << r.oracle_calls << ',' << format_number(r.rel_acc) << ','
       << format_number(r.f_gap) << ',' << format_number(r.elapsed_s) << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRecord>& aggregate) {
  os << kAggregateHeader << '\n';
  for (const AggregateRecord& a : aggregate) {
    os << a.iteration << ',' << a.oracle_calls << ',' << format_number(a.rel_acc_mean) << ','
       << format_number(a.f_gap_mean) << ',' << format_number(a.elapsed_s) << ','
       << format_number(a.rel_acc_mean) << ',' << format_number(a.rel_acc_min) << ','
       << format_number(a.rel_acc_max) << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': expected a number, got '" + v + "'");
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const auto u = std::stoull(v, &pos);
    if (pos == v.size() && v.find('-') == std::string::npos) return u;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key '" + key + "': expected a non-negative integer, got '" +
                              v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config_value(ExperimentConfig& c, const std::string& key, const std::string& v) {
  if (key == "method") {
    c.method = parse_method(v);
  } else if (key == "p") {
    c.p = static_cast<int>(to_uint(key, v));
  } else if (key == "gamma") {
    c.gamma = to_double(key, v);
  } else if (key == "n") {
    c.n = to_uint(key, v);
  } else if (key == "L2") {
    c.lipschitz_grad = to_double(key, v);
  } else if (key == "sigma2") {
    c.sigma2 = to_double(key, v);
  } else if (key == "delta") {
    c.delta = to_double(key, v);
  } else if (key == "eps") {
    c.eps = to_double(key, v);
  } else if (key == "seeds") {
    c.seeds.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!trim(item).empty()) c.seeds.push_back(to_uint(key, trim(item)));
    }
  } else if (key == "max_iters") {
    c.max_iters = to_uint(key, v);
  } else if (key == "batch") {
    c.batch = to_uint(key, v);
  } else if (key == "t") {
    c.smoothing = to_double(key, v);
  } else if (key == "record_every") {
    c.record_every = to_uint(key, v);
  } else if (key == "until_rel_acc") {
    c.until_rel_acc = to_double(key, v);
  } else if (key == "rspgf_step") {
    c.rspgf_step = to_double(key, v);
  } else if (key == "problem_seed") {
    c.problem_seed = to_uint(key, v);
  } else if (key == "c_scale") {
    c.c_scale = to_double(key, v);
  } else if (key == "x0") {
    c.x0_rule = v;
  } else if (key == "wall_clock") {
    c.wall_clock = to_bool(key, v);
  } else if (key == "workers") {
    c.workers = static_cast<int>(to_uint(key, v));
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

json config_to_json(const ExperimentConfig& c) {
  return json{{"method", to_string(c.method)},
              {"p", c.p},
              {"gamma", optional_json(c.gamma)},
              {"n", c.n},
              {"L2", c.lipschitz_grad},
              {"sigma2", optional_json(c.sigma2)},
              {"delta", optional_json(c.delta)},
              {"eps", c.eps},
              {"seeds", c.seeds},
              {"max_iters", c.max_iters},
              {"batch", c.batch},
              {"t", optional_json(c.smoothing)},
              {"record_every", c.record_every},
              {"until_rel_acc", optional_json(c.until_rel_acc)},
              {"rspgf_step", optional_json(c.rspgf_step)},
              {"problem_seed", c.problem_seed},
              {"c_scale", c.c_scale},
              {"x0", c.x0_rule},
              {"wall_clock", c.wall_clock}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.method = parse_method(j.at("method").get<std::string>());
  c.p = j.at("p").get<int>();
  c.gamma = optional_from<double>(j, "gamma");
  c.n = j.at("n").get<std::size_t>();
  c.lipschitz_grad = j.at("L2").get<double>();
  c.sigma2 = optional_from<double>(j, "sigma2");
  c.delta = optional_from<double>(j, "delta");
  c.eps = j.at("eps").get<double>();
  c.seeds = j.at("seeds").get<std::vector<Seed>>();
  c.max_iters = j.value("max_iters", std::size_t{0});
  c.batch = j.value("batch", std::size_t{0});
  c.smoothing = optional_from<double>(j, "t");
  c.record_every = j.value("record_every", std::size_t{0});
  c.until_rel_acc = optional_from<double>(j, "until_rel_acc");
  c.rspgf_step = optional_from<double>(j, "rspgf_step");
  c.problem_seed = j.value("problem_seed", Seed{0});
  c.c_scale = j.value("c_scale", 1.0);
  c.x0_rule = j.value("x0", std::string("shifted"));
  c.wall_clock = j.value("wall_clock", false);
  return c;
}

json manifest_json(const ExperimentResult& result, const std::vector<std::string>& trace_files) {
  const ResolvedSettings& s = result.settings;
  json runs = json::array();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const SeedRun& r = result.runs[i];
    runs.push_back({{"seed", r.seed},
                    {"final_rel_acc", r.final_rel_acc},
                    {"oracle_calls", r.oracle_calls},
                    {"iterations", r.iterations},
                    {"runtime_s", r.runtime_s},
                    {"trace", i < trace_files.size() ? trace_files[i] : ""}});
  }
  return json{{"toolkit", "ardfds"},
              {"version", kToolkitVersion},
              {"config", config_to_json(result.config)},
              {"plan",
               {{"N", s.plan.n_iters},
                {"m", s.plan.batch},
                {"t", s.plan.smoothing},
                {"delta_budget", s.plan.delta_budget}}},
              {"resolved",
               {{"gamma", s.gamma},
                {"sigma2", s.sigma2},
                {"delta", s.delta},
                {"theta", s.theta},
                {"theta1", s.theta1},
                {"n_iters", s.n_iters},
                {"batch", s.batch},
                {"t", s.smoothing},
                {"record_every", s.record_every},
                {"initial_gap", s.initial_gap},
                {"rspgf_step", s.rspgf_step}}},
              {"seeds", result.config.seeds},
              {"seeds_averaged", result.config.seeds.size()},
              {"stop_iteration", optional_json(result.stop_iteration)},
              {"runs", runs}};
}

}  // namespace ardfds
