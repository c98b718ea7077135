#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <driftguard/baselines.hpp>
#include <driftguard/csv.hpp>
#include <driftguard/metrics.hpp>

namespace driftguard::cli {

using nlohmann::ordered_json;

namespace {

// Compact rendering for the human-readable report; data files use the exact
// round-trip form instead.
std::string format_compact(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& dir,
                          const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void write_json(const std::filesystem::path& dir, const std::string& name,
                const ordered_json& doc) {
    std::ofstream out = open_output(dir, name);
    out << doc.dump(2) << '\n';
}

struct PreparedStream {
    SplitStream stream;
    Standardizer standardizer;
};

PreparedStream prepare_stream(const RunConfig& config) {
    PreparedStream prepared;
    prepared.stream = load_stream(config.resolved_stream());
    if (prepared.stream.train.empty()) {
        throw std::runtime_error("training segment is empty");
    }
    prepared.standardizer = standardize(prepared.stream);
    return prepared;
}

std::vector<FeatureVector> benign_feature_rows(const std::vector<Event>& events) {
    std::vector<FeatureVector> rows;
    for (const Event& e : events) {
        if (e.label == 0) rows.push_back(e.features);
    }
    return rows;
}

}  // namespace

int cmd_detect(const RunConfig& config, const std::string& out_dir) {
    const PreparedStream prepared = prepare_stream(config);
    const DecisionPolicy policy = config.decision_policy();
    const ErrorBudget budget = config.error_budget();
    const BocpdConfig engine = build_bocpd_config(
        config.detector, prepared.stream.train, policy.base_rate);
    const DetectionRun run =
        run_detector(engine, prepared.stream.test, policy);

    const std::filesystem::path dir(out_dir);
    {
        std::ofstream out = open_output(dir, "timeline.csv");
        write_timeline_csv(out, timeline_export(run.events, policy));
    }
    std::int64_t alerts = 0;
    std::int64_t false_positives = 0;
    std::int64_t false_negatives = 0;
    {
        std::ofstream out = open_output(dir, "alerts.log");
        for (std::size_t i = 0; i < run.events.size(); ++i) {
            const ScoredEvent& e = run.events[i];
            if (e.alert) {
                ++alerts;
                out << "t=" << e.t << " probability=" << format_double(e.score)
                    << " map_run_length=" << run.map_run_lengths[i] << '\n';
            }
            if (e.alert && e.label == 0) ++false_positives;
            if (!e.alert && e.label == 1) ++false_negatives;
        }
    }

    const BudgetCapacity capacity = budget_capacity(budget, policy);
    const double burn = static_cast<double>(false_positives) * policy.cost_fp +
                        static_cast<double>(false_negatives) * policy.cost_fn;
    ordered_json summary;
    summary["events"] = run.events.size();
    summary["alerts"] = alerts;
    summary["threshold"] = policy.threshold;
    summary["budget_minutes"] = budget.budget_minutes;
    summary["max_false_alerts"] = capacity.max_false_alerts;
    summary["max_missed_incidents"] = capacity.max_missed_incidents;
    summary["false_positives"] = false_positives;
    summary["false_negatives"] = false_negatives;
    summary["budget_burn_minutes"] = burn;
    summary["within_budget"] = burn <= budget.budget_minutes;
    summary["seed"] = config.seed;
    write_json(dir, "summary.json", summary);
    return 0;
}

int cmd_eval(const RunConfig& config, const std::string& out_dir,
             bool include_oracle) {
    const PreparedStream prepared = prepare_stream(config);
    const DecisionPolicy policy = config.decision_policy();
    const std::filesystem::path dir(out_dir);

    // method name -> (scores over test, scores are probabilities)
    std::vector<std::pair<std::string, std::pair<std::vector<double>, bool>>>
        methods;

    const BocpdConfig engine = build_bocpd_config(
        config.detector, prepared.stream.train, policy.base_rate);
    const DetectionRun run =
        run_detector(engine, prepared.stream.test, policy);
    {
        std::vector<double> scores;
        scores.reserve(run.events.size());
        for (const ScoredEvent& e : run.events) scores.push_back(e.score);
        methods.emplace_back("detector", std::make_pair(std::move(scores), true));
    }

    const std::vector<FeatureVector> benign_train =
        benign_feature_rows(prepared.stream.train);
    std::vector<FeatureVector> test_rows;
    test_rows.reserve(prepared.stream.test.size());
    for (const Event& e : prepared.stream.test) test_rows.push_back(e.features);

    for (const std::string& name : config.baseline_methods) {
        const FittedBaseline fitted = FittedBaseline::fit(
            baseline_from_name(name), benign_train, config.lof_k);
        methods.emplace_back(
            name, std::make_pair(fitted.score_stream(test_rows), false));
    }
    if (include_oracle) {
        std::vector<double> scores;
        scores.reserve(prepared.stream.test.size());
        for (const Event& e : prepared.stream.test) {
            scores.push_back(static_cast<double>(e.label));
        }
        methods.emplace_back("oracle", std::make_pair(std::move(scores), true));
    }

    std::vector<int> labels;
    labels.reserve(prepared.stream.test.size());
    for (const Event& e : prepared.stream.test) labels.push_back(e.label);

    ordered_json metrics;
    for (const auto& [name, entry] : methods) {
        const auto& [scores, is_probability] = entry;
        LabeledScores data{scores, labels};
        const PrCurveResult pr = pr_curve(data);
        const RocCurveResult roc = roc_curve(data);
        {
            std::ofstream out = open_output(dir, "pr_" + name + ".csv");
            write_curve_csv(out, pr.points);
        }
        {
            std::ofstream out = open_output(dir, "roc_" + name + ".csv");
            write_curve_csv(out, roc.points);
        }
        ordered_json entry_json;
        entry_json["auprc"] = pr.auprc;
        entry_json["auc"] = roc.auc;
        if (is_probability) {
            const ReliabilityResult rel = reliability(data, 10);
            entry_json["ece"] = rel.ece;
            if (name == "detector") {
                std::ofstream out = open_output(dir, "reliability_detector.csv");
                write_reliability_csv(out, rel.bins);
            }
        }
        entry_json["n"] = data.scores.size();
        entry_json["positives"] = data.positives();
        metrics[name] = std::move(entry_json);
    }
    write_json(dir, "metrics.json", metrics);
    return 0;
}

int cmd_tune(const RunConfig& config, const std::string& out_dir) {
    const PreparedStream prepared = prepare_stream(config);
    const DecisionPolicy policy = config.decision_policy();

    TuningGrid grid = config.tuning;
    if (grid.hazard_values.empty()) {
        grid.hazard_values = {0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
    }
    if (grid.scale_inflation_values.empty()) {
        grid.scale_inflation_values = {3.0, 10.0, 30.0};
    }

    const TuneResult result = tune(grid, prepared.stream.train,
                                   prepared.stream.validation,
                                   config.detector, policy);

    const std::filesystem::path dir(out_dir);
    {
        std::ofstream out = open_output(dir, "tuning.csv");
        write_tuning_csv(out, result, grid.objective);
    }

    RunConfig chosen = config;
    chosen.detector.hazard = result.best().hazard;
    chosen.detector.scale_inflation = result.best().scale_inflation;
    if (result.best().mixing_weight) {
        chosen.detector.mixing_weight = result.best().mixing_weight;
    }
    write_json(dir, "chosen_config.json", run_config_to_json(chosen));
    return 0;
}

int cmd_synth(const RunConfig& config, const std::string& out_dir) {
    StreamSpec spec = config.resolved_stream();
    if (!spec.synthetic) {
        throw std::runtime_error("synth: config has no stream.synthetic section");
    }
    const std::vector<Event> events = generate_synthetic(*spec.synthetic);
    std::ofstream out = open_output(out_dir, "synthetic.csv");
    write_stream_csv(out, events, spec.synthetic->dimension);
    return 0;
}

int cmd_budget(double slo, double period_minutes, double cost_fp,
               double cost_fn, double base_rate,
               const std::optional<std::string>& out_dir) {
    const ErrorBudget budget = ErrorBudget::make(slo, period_minutes);
    const DecisionPolicy policy =
        DecisionPolicy::make(cost_fp, cost_fn, base_rate);
    const BudgetCapacity capacity = budget_capacity(budget, policy);

    std::ostringstream threshold_2dp;
    threshold_2dp.setf(std::ios::fixed);
    threshold_2dp.precision(2);
    threshold_2dp << policy.threshold;

    std::cout << "error budget: " << format_compact(budget.budget_minutes)
              << " minutes per " << format_compact(period_minutes)
              << "-minute period (SLO " << format_compact(slo * 100.0) << "%)\n"
              << "alert threshold: " << threshold_2dp.str() << " (exact "
              << format_double(policy.threshold) << ")\n"
              << "max false alerts within budget: " << capacity.max_false_alerts
              << "\n"
              << "max missed incidents within budget: "
              << capacity.max_missed_incidents << "\n";

    if (out_dir) {
        ordered_json doc;
        doc["slo"] = slo;
        doc["period_minutes"] = period_minutes;
        doc["budget_minutes"] = budget.budget_minutes;
        doc["cost_fp"] = cost_fp;
        doc["cost_fn"] = cost_fn;
        doc["base_rate"] = base_rate;
        doc["threshold"] = policy.threshold;
        doc["max_false_alerts"] = capacity.max_false_alerts;
        doc["max_missed_incidents"] = capacity.max_missed_incidents;
        write_json(*out_dir, "budget.json", doc);
    }
    return 0;
}

}  // namespace driftguard::cli
