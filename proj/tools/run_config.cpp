#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

namespace driftguard::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

MaliciousFit malicious_fit_from_name(const std::string& name) {
    if (name == "auto") return MaliciousFit::kAuto;
    if (name == "labels") return MaliciousFit::kLabels;
    if (name == "inflate") return MaliciousFit::kInflate;
    throw std::invalid_argument("unknown malicious_fit: " + name);
}

std::string malicious_fit_name(MaliciousFit fit) {
    switch (fit) {
        case MaliciousFit::kAuto: return "auto";
        case MaliciousFit::kLabels: return "labels";
        case MaliciousFit::kInflate: return "inflate";
    }
    throw std::invalid_argument("unknown malicious fit");
}

Assignment assignment_from_name(const std::string& name) {
    if (name == "soft") return Assignment::kSoft;
    if (name == "hard") return Assignment::kHard;
    throw std::invalid_argument("unknown assignment: " + name);
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
    if (obj.contains(key) && !obj.at(key).is_null()) {
        out = obj.at(key).get<T>();
    }
}

}  // namespace

DecisionPolicy RunConfig::decision_policy() const {
    return DecisionPolicy::make(policy.cost_fp, policy.cost_fn, policy.base_rate);
}

ErrorBudget RunConfig::error_budget() const {
    return ErrorBudget::make(slo, period_minutes);
}

StreamSpec RunConfig::resolved_stream() const {
    StreamSpec spec = stream;
    if (spec.synthetic) {
        spec.synthetic->seed = seed;
    }
    return spec;
}

RunConfig parse_run_config(const json& doc) {
    RunConfig config;
    read_if(doc, "seed", config.seed);

    if (doc.contains("stream")) {
        const json& s = doc.at("stream");
        read_if(s, "source", config.stream.path);
        if (s.contains("synthetic") && !s.at("synthetic").is_null()) {
            const json& g = s.at("synthetic");
            SyntheticConfig synth;
            read_if(g, "dimension", synth.dimension);
            read_if(g, "length", synth.length);
            read_if(g, "benign_mean_drift_rate", synth.benign_mean_drift_rate);
            read_if(g, "attack_rate", synth.attack_rate);
            read_if(g, "attack_shift", synth.attack_shift);
            read_if(g, "burst_length_mean", synth.burst_length_mean);
            read_if(g, "changepoint_hazard", synth.changepoint_hazard);
            config.stream.synthetic = synth;
        }
        read_if(s, "feature_columns", config.stream.feature_columns);
        read_if(s, "label_column", config.stream.label_column);
        if (s.contains("timestamp_column") && !s.at("timestamp_column").is_null()) {
            config.stream.timestamp_column =
                s.at("timestamp_column").get<std::string>();
        }
        read_if(s, "benign_labels", config.stream.benign_labels);
        if (s.contains("split_fractions") && !s.at("split_fractions").is_null()) {
            const auto fractions =
                s.at("split_fractions").get<std::vector<double>>();
            if (fractions.size() != 3) {
                throw std::invalid_argument(
                    "split_fractions must have three entries");
            }
            config.stream.split_fractions = {fractions[0], fractions[1],
                                             fractions[2]};
        }
    }

    if (doc.contains("detector")) {
        const json& d = doc.at("detector");
        read_if(d, "hazard", config.detector.hazard);
        read_if(d, "prune_log_threshold", config.detector.prune_log_threshold);
        if (d.contains("max_run_length") && !d.at("max_run_length").is_null()) {
            config.detector.max_run_length =
                d.at("max_run_length").get<std::int64_t>();
        }
        if (d.contains("mixing_weight") && !d.at("mixing_weight").is_null()) {
            config.detector.mixing_weight = d.at("mixing_weight").get<double>();
        }
        read_if(d, "prior_strength", config.detector.prior_strength);
        read_if(d, "malicious_prior_strength",
                config.detector.malicious_prior_strength);
        read_if(d, "scale_inflation", config.detector.scale_inflation);
        if (d.contains("malicious_fit")) {
            config.detector.malicious_fit =
                malicious_fit_from_name(d.at("malicious_fit").get<std::string>());
        }
        if (d.contains("assignment")) {
            config.detector.assignment =
                assignment_from_name(d.at("assignment").get<std::string>());
        }
    }

    if (doc.contains("policy")) {
        const json& p = doc.at("policy");
        read_if(p, "cost_fp", config.policy.cost_fp);
        read_if(p, "cost_fn", config.policy.cost_fn);
        read_if(p, "base_rate", config.policy.base_rate);
    }

    if (doc.contains("budget")) {
        const json& b = doc.at("budget");
        read_if(b, "slo", config.slo);
        read_if(b, "period_minutes", config.period_minutes);
    }

    if (doc.contains("baselines")) {
        const json& b = doc.at("baselines");
        read_if(b, "methods", config.baseline_methods);
        read_if(b, "lof_k", config.lof_k);
    }

    if (doc.contains("tuning")) {
        const json& t = doc.at("tuning");
        read_if(t, "hazard_values", config.tuning.hazard_values);
        read_if(t, "scale_inflation_values",
                config.tuning.scale_inflation_values);
        read_if(t, "mixing_weights", config.tuning.mixing_weights);
        if (t.contains("objective")) {
            config.tuning.objective =
                objective_from_name(t.at("objective").get<std::string>());
        }
    }
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    json doc = json::parse(file);
    return parse_run_config(doc);
}

ordered_json run_config_to_json(const RunConfig& config) {
    ordered_json doc;
    doc["seed"] = config.seed;

    ordered_json stream;
    if (!config.stream.path.empty()) stream["source"] = config.stream.path;
    if (config.stream.synthetic) {
        const SyntheticConfig& g = *config.stream.synthetic;
        stream["synthetic"] = {
            {"dimension", g.dimension},
            {"length", g.length},
            {"benign_mean_drift_rate", g.benign_mean_drift_rate},
            {"attack_rate", g.attack_rate},
            {"attack_shift", g.attack_shift},
            {"burst_length_mean", g.burst_length_mean},
            {"changepoint_hazard", g.changepoint_hazard},
        };
    }
    if (!config.stream.feature_columns.empty()) {
        stream["feature_columns"] = config.stream.feature_columns;
    }
    stream["label_column"] = config.stream.label_column;
    if (config.stream.timestamp_column) {
        stream["timestamp_column"] = *config.stream.timestamp_column;
    }
    stream["benign_labels"] = config.stream.benign_labels;
    stream["split_fractions"] = {config.stream.split_fractions.train,
                                 config.stream.split_fractions.validation,
                                 config.stream.split_fractions.test};
    doc["stream"] = std::move(stream);

    ordered_json detector;
    detector["hazard"] = config.detector.hazard;
    detector["prune_log_threshold"] = config.detector.prune_log_threshold;
    if (config.detector.max_run_length) {
        detector["max_run_length"] = *config.detector.max_run_length;
    }
    if (config.detector.mixing_weight) {
        detector["mixing_weight"] = *config.detector.mixing_weight;
    }
    detector["prior_strength"] = config.detector.prior_strength;
    detector["malicious_prior_strength"] =
        config.detector.malicious_prior_strength;
    detector["scale_inflation"] = config.detector.scale_inflation;
    detector["malicious_fit"] = malicious_fit_name(config.detector.malicious_fit);
    detector["assignment"] =
        config.detector.assignment == Assignment::kSoft ? "soft" : "hard";
    doc["detector"] = std::move(detector);

    doc["policy"] = {{"cost_fp", config.policy.cost_fp},
                     {"cost_fn", config.policy.cost_fn},
                     {"base_rate", config.policy.base_rate}};
    doc["budget"] = {{"slo", config.slo},
                     {"period_minutes", config.period_minutes}};
    doc["baselines"] = {{"methods", config.baseline_methods},
                        {"lof_k", config.lof_k}};
    if (!config.tuning.hazard_values.empty()) {
        doc["tuning"] = {
            {"hazard_values", config.tuning.hazard_values},
            {"scale_inflation_values", config.tuning.scale_inflation_values},
            {"mixing_weights", config.tuning.mixing_weights},
            {"objective", objective_name(config.tuning.objective)},
        };
    }
    return doc;
}

}  // namespace driftguard::cli
