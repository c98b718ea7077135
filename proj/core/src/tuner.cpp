#include "driftguard/tuner.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "driftguard/csv.hpp"
#include "driftguard/metrics.hpp"

namespace driftguard {

std::string objective_name(TuneObjective objective) {
    switch (objective) {
        case TuneObjective::kAuprc: return "auprc";
        case TuneObjective::kLogEvidence: return "log_evidence";
    }
    throw std::invalid_argument("unknown objective");
}

TuneObjective objective_from_name(const std::string& name) {
    if (name == "auprc") return TuneObjective::kAuprc;
    if (name == "log_evidence") return TuneObjective::kLogEvidence;
    throw std::invalid_argument("unknown objective: " + name);
}

void TuningGrid::validate() const {
    if (hazard_values.empty() || scale_inflation_values.empty()) {
        throw std::invalid_argument("tuning grid lists must be nonempty");
    }
    for (double h : hazard_values) HazardFunction{h}.validate();
    for (double s : scale_inflation_values) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("scale inflation must be positive");
        }
    }
    for (double w : mixing_weights) {
        if (!(w > 0.0) || !(w < 1.0)) {
            throw std::invalid_argument("mixing weight must lie in (0, 1)");
        }
    }
}

TuneResult tune(const TuningGrid& grid, const std::vector<Event>& train,
                const std::vector<Event>& validation,
                const DetectorSettings& base, const DecisionPolicy& policy) {
    grid.validate();
    if (train.empty() || validation.empty()) {
        throw std::invalid_argument("tune: empty train or validation segment");
    }

    // A single "default" mixing entry keeps the loop uniform.
    std::vector<std::optional<double>> mixings;
    if (grid.mixing_weights.empty()) {
        mixings.push_back(std::nullopt);
    } else {
        for (double w : grid.mixing_weights) mixings.emplace_back(w);
    }

    TuneResult result;
    bool have_best = false;
    for (double hazard : grid.hazard_values) {
        for (double inflation : grid.scale_inflation_values) {
            for (const std::optional<double>& mixing : mixings) {
                TuneCell cell;
                cell.hazard = hazard;
                cell.scale_inflation = inflation;
                cell.mixing_weight = mixing;

                DetectorSettings settings = base;
                settings.hazard = hazard;
                settings.scale_inflation = inflation;
                if (mixing) settings.mixing_weight = mixing;

                try {
                    const BocpdConfig config =
                        build_bocpd_config(settings, train, policy.base_rate);
                    const DetectionRun run =
                        run_detector(config, validation, policy);
                    if (grid.objective == TuneObjective::kLogEvidence) {
                        cell.value = run.total_log_evidence();
                    } else {
                        LabeledScores data;
                        data.scores.reserve(run.events.size());
                        data.labels.reserve(run.events.size());
                        for (const ScoredEvent& e : run.events) {
                            data.scores.push_back(e.score);
                            data.labels.push_back(e.label);
                        }
                        if (data.positives() == 0) {
                            throw std::runtime_error(
                                "objective undefined: no validation positives");
                        }
                        cell.value = pr_curve(data).auprc;
                    }
                } catch (const std::exception& e) {
                    cell.value.reset();
                    cell.error = e.what();
                }

                result.table.push_back(std::move(cell));
                const TuneCell& added = result.table.back();
                if (added.value &&
                    (!have_best ||
                     *added.value > *result.table[result.best_index].value)) {
                    // Strict > keeps the earliest cell on ties, which is the
                    // smallest (hazard, inflation, mixing) in grid order.
                    result.best_index = result.table.size() - 1;
                    have_best = true;
                }
            }
        }
    }
    if (!have_best) {
        throw std::runtime_error("tune: no valid cells (objective undefined "
                                 "for every grid cell)");
    }
    return result;
}

std::vector<SensitivityRow> threshold_sensitivity(
    const std::vector<PolicyCell>& policy_grid,
    const std::vector<ScoredEvent>& scored) {
    std::vector<SensitivityRow> rows;
    rows.reserve(policy_grid.size());
    std::int64_t positives = 0;
    for (const ScoredEvent& e : scored) positives += e.label;

    for (const PolicyCell& cell : policy_grid) {
        const DecisionPolicy policy =
            DecisionPolicy::make(cell.cost_fp, cell.cost_fn, cell.base_rate);
        SensitivityRow row;
        row.policy = cell;
        row.threshold = policy.threshold;
        std::int64_t tp = 0;
        std::int64_t fp = 0;
        std::int64_t fn = 0;
        for (const ScoredEvent& e : scored) {
            const bool alert = decide(e.score, policy);
            if (alert && e.label == 1) ++tp;
            if (alert && e.label == 0) ++fp;
            if (!alert && e.label == 1) ++fn;
        }
        row.false_positives = fp;
        row.false_negatives = fn;
        row.precision = (tp + fp) > 0
                            ? static_cast<double>(tp) /
                                  static_cast<double>(tp + fp)
                            : 1.0;
        row.recall = positives > 0
                         ? static_cast<double>(tp) / static_cast<double>(positives)
                         : 1.0;
        row.budget_burn_minutes = static_cast<double>(fp) * cell.cost_fp +
                                  static_cast<double>(fn) * cell.cost_fn;
        rows.push_back(row);
    }
    return rows;
}

void write_tuning_csv(std::ostream& out, const TuneResult& result,
                      TuneObjective objective) {
    out << "hazard,scale_inflation,mixing_weight,objective,value\n";
    for (const TuneCell& cell : result.table) {
        out << format_double(cell.hazard) << ','
            << format_double(cell.scale_inflation) << ',';
        if (cell.mixing_weight) out << format_double(*cell.mixing_weight);
        out << ',' << objective_name(objective) << ',';
        if (cell.value) out << format_double(*cell.value);
        out << '\n';
    }
}

void write_sensitivity_csv(std::ostream& out,
                           const std::vector<SensitivityRow>& rows) {
    out << "cost_fp,cost_fn,base_rate,threshold,precision,recall,"
           "false_positives,false_negatives,budget_burn_minutes\n";
    for (const SensitivityRow& r : rows) {
        out << format_double(r.policy.cost_fp) << ','
            << format_double(r.policy.cost_fn) << ','
            << format_double(r.policy.base_rate) << ','
            << format_double(r.threshold) << ',' << format_double(r.precision)
            << ',' << format_double(r.recall) << ',' << r.false_positives << ','
            << r.false_negatives << ',' << format_double(r.budget_burn_minutes)
            << '\n';
    }
}

}  // namespace driftguard
