#pragma once

#include <optional>
#include <string>

#include "run_config.hpp"

namespace driftguard::cli {

/// Streaming pass over the test segment; writes timeline.csv, alerts.log,
/// and summary.json into out_dir.
int cmd_detect(const RunConfig& config, const std::string& out_dir);

/// Detector + baseline evaluation on the test segment; writes metrics.json,
/// per-method PR/ROC curve CSVs, and the detector reliability CSV.
/// include_oracle adds a label-reading "oracle" method (debug aid).
int cmd_eval(const RunConfig& config, const std::string& out_dir,
             bool include_oracle);

/// Validation-window grid search; writes tuning.csv and chosen_config.json
/// (a full run config that cmd_detect accepts unchanged).
int cmd_tune(const RunConfig& config, const std::string& out_dir);

/// Writes the synthetic stream to synthetic.csv.
int cmd_synth(const RunConfig& config, const std::string& out_dir);

/// Prints the budget report; writes budget.json when out_dir is given.
int cmd_budget(double slo, double period_minutes, double cost_fp,
               double cost_fn, double base_rate,
               const std::optional<std::string>& out_dir);

}  // namespace driftguard::cli
