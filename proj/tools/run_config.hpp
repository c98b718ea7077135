#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <driftguard/detector.hpp>
#include <driftguard/stream.hpp>
#include <driftguard/tuner.hpp>

#include "json.hpp"

namespace driftguard::cli {

/// Everything a run needs, assembled from defaults, then the config file,
/// then command-line flags (later layers win).
struct RunConfig {
    std::uint64_t seed = 1;
    StreamSpec stream;
    DetectorSettings detector;
    PolicyCell policy;
    double slo = 0.999;
    double period_minutes = 43200.0;
    std::vector<std::string> baseline_methods = {"lof", "ecod", "copod"};
    std::size_t lof_k = 20;
    TuningGrid tuning;

    DecisionPolicy decision_policy() const;
    ErrorBudget error_budget() const;

    /// Stream spec with the run seed pushed into the synthetic generator.
    StreamSpec resolved_stream() const;
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);
nlohmann::ordered_json run_config_to_json(const RunConfig& config);

}  // namespace driftguard::cli
