#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "driftguard/detector.hpp"
#include "driftguard/risk.hpp"
#include "driftguard/stream.hpp"

namespace driftguard {

enum class TuneObjective { kAuprc, kLogEvidence };

std::string objective_name(TuneObjective objective);
TuneObjective objective_from_name(const std::string& name);

/// Validation-window grid over hazard and model-prior settings. Costs are
/// never tuned; they enter sensitivity reporting only.
struct TuningGrid {
    std::vector<double> hazard_values;
    std::vector<double> scale_inflation_values;
    /// Optional; empty means "use the policy-derived default".
    std::vector<double> mixing_weights;
    TuneObjective objective = TuneObjective::kLogEvidence;

    void validate() const;
};

struct TuneCell {
    double hazard = 0.0;
    double scale_inflation = 0.0;
    std::optional<double> mixing_weight;
    std::optional<double> value;  // empty when the cell was excluded
    std::string error;            // why, when excluded
};

struct TuneResult {
    std::size_t best_index = 0;
    std::vector<TuneCell> table;  // grid order: hazard > inflation > mixing

    const TuneCell& best() const { return table[best_index]; }
};

/// Fits priors on train, runs the detector over validation per grid cell,
/// and scores the objective. Ties break toward smaller hazard, then smaller
/// inflation, then smaller mixing weight.
TuneResult tune(const TuningGrid& grid, const std::vector<Event>& train,
                const std::vector<Event>& validation,
                const DetectorSettings& base, const DecisionPolicy& policy);

struct PolicyCell {
    double cost_fp = 1.0;
    double cost_fn = 10.0;
    double base_rate = 0.01;
};

struct SensitivityRow {
    PolicyCell policy;
    double threshold = 0.0;
    double precision = 0.0;  // 1 when there are no alerts
    double recall = 0.0;     // 1 when there are no positives
    std::int64_t false_positives = 0;
    std::int64_t false_negatives = 0;
    double budget_burn_minutes = 0.0;  // FP*cost_fp + FN*cost_fn
};

/// Re-thresholds an already-scored stream under each candidate policy.
std::vector<SensitivityRow> threshold_sensitivity(
    const std::vector<PolicyCell>& policy_grid,
    const std::vector<ScoredEvent>& scored);

/// `hazard,scale_inflation,mixing_weight,objective,value` rows in grid order.
void write_tuning_csv(std::ostream& out, const TuneResult& result,
                      TuneObjective objective);

void write_sensitivity_csv(std::ostream& out,
                           const std::vector<SensitivityRow>& rows);

}  // namespace driftguard
