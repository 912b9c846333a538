#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ardfds/experiment.hpp"

namespace ardfds {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kTraceHeader = "iter,oracle_calls,rel_acc,f_gap,elapsed_s";
inline constexpr const char* kAggregateHeader =
    "iter,oracle_calls,rel_acc,f_gap,elapsed_s,rel_acc_mean,rel_acc_min,rel_acc_max";

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRecord>& aggregate);

/// Flat `key = value` document; `#` starts a comment. Throws std::invalid_argument
/// on a line without '='.
std::map<std::string, std::string> parse_key_values(std::istream& is);

/// Sets one ExperimentConfig field from its config-file key.
void apply_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Everything needed to re-run: the config echo plus resolved and per-seed summaries.
nlohmann::json manifest_json(const ExperimentResult& result,
                             const std::vector<std::string>& trace_files);

}  // namespace ardfds
