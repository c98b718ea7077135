// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <driftguard/baselines.hpp>
#include <driftguard/bocpd.hpp>
#include <driftguard/detector.hpp>
#include <driftguard/logspace.hpp>
#include <driftguard/metrics.hpp>
#include <driftguard/risk.hpp>
#include <driftguard/stream.hpp>

#include "json.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace driftguard;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
    std::printf("%s criterion %2d: %-28s %s (%.2fs)\n", pass ? "PASS" : "FAIL",
                criterion, name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

void run_criterion(int criterion, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report(criterion, name, pass, detail, seconds);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DRIFTGUARD_CLI_PATH) + " " + args +
                            " > /dev/null 2> /dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

// ---- criterion 1: threshold formula ----

std::pair<bool, std::string> criterion_threshold() {
    const double t = derive_threshold(1.0, 10.0, 0.01);
    const double expected = 0.99 / 1.09;
    char two_dp[16];
    std::snprintf(two_dp, sizeof(two_dp), "%.2f", t);
    const bool pass =
        std::abs(t - expected) <= 1e-12 && std::string(two_dp) == "0.91";
    std::ostringstream detail;
    detail << "T=" << t << " displays as " << two_dp;
    return {pass, detail.str()};
}

// ---- criterion 2: budget arithmetic through the CLI ----

std::pair<bool, std::string> criterion_budget() {
    const fs::path dir =
        fs::temp_directory_path() / "driftguard_acceptance_budget";
    fs::create_directories(dir);
    if (run_cli("budget --slo 0.999 --period-minutes 43200 --cost-fp 1 "
                "--cost-fn 10 --base-rate 0.01 --out " +
                dir.string()) != 0) {
        return {false, "cmd_budget exited nonzero"};
    }
    const auto doc = nlohmann::json::parse(slurp(dir / "budget.json"));
    fs::remove_all(dir);
    const double budget = doc["budget_minutes"].get<double>();
    const long long max_fp = doc["max_false_alerts"].get<long long>();
    const bool pass = std::abs(budget - 43.2) <= 1e-9 && max_fp == 43;
    std::ostringstream detail;
    detail << "budget=" << budget << " max_false_alerts=" << max_fp;
    return {pass, detail.str()};
}

// ---- criterion 3: recursion vs enumeration oracle ----

std::pair<bool, std::string> criterion_oracle_equivalence() {
    std::mt19937 rng(13579);
    std::uniform_real_distribution<double> hazard_dist(0.05, 0.5);
    std::uniform_int_distribution<int> length_dist(3, 8);
    std::normal_distribution<double> value(0.0, 2.0);

    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        BocpdConfig config;
        config.hazard = HazardFunction{hazard_dist(rng)};
        config.prune_log_threshold = -1e300;
        config.benign_prior = {NigParams{0.0, 1.0, 1.0, 1.0}};
        config.malicious_prior = {NigParams{0.0, 1.0, 1.0, 10.0}};
        config.mixing_weight = 0.9;

        const int length = length_dist(rng);
        std::vector<std::vector<double>> data;
        for (int t = 0; t < length; ++t) data.push_back({value(rng)});

        oracle::EnumerationModel model;
        model.benign = {{0.0, 1.0, 1.0, 1.0}};
        model.malicious = {{0.0, 1.0, 1.0, 10.0}};
        model.mixing_weight = config.mixing_weight;
        const auto expected =
            oracle::bocpd_enumeration(data, config.hazard.hazard, model);

        RunLengthPosterior posterior = init(config);
        for (std::size_t t = 0; t < data.size(); ++t) {
            posterior = step(posterior, data[t], config).posterior;
            for (std::size_t i = 0; i < posterior.size(); ++i) {
                const auto r = static_cast<std::size_t>(posterior.run_lengths[i]);
                worst = std::max(worst, std::abs(std::exp(posterior.log_weights[i]) -
                                                 expected[t][r]));
            }
        }
    }
    std::ostringstream detail;
    detail << "max |mass error| = " << worst << " over 50 streams";
    return {worst <= 1e-8, detail.str()};
}

// ---- criterion 4: normalization over 1e4 steps ----

std::pair<bool, std::string> criterion_normalization() {
    SyntheticConfig synth;
    synth.dimension = 2;
    synth.length = 10000;
    synth.seed = 99;
    const std::vector<Event> events = generate_synthetic(synth);

    std::vector<Event> train(events.begin(), events.begin() + 2000);
    DetectorSettings settings;
    const BocpdConfig config = build_bocpd_config(settings, train, 0.01);

    RunLengthPosterior posterior = init(config);
    double worst = 0.0;
    for (const Event& e : events) {
        posterior = step(posterior, e.features, config).posterior;
        worst = std::max(worst, std::abs(logsumexp(posterior.log_weights)));
    }
    std::ostringstream detail;
    detail << "max |logsumexp| = " << worst << " over 10000 steps";
    return {worst <= 1e-9, detail.str()};
}

// ---- criterion 5: changepoint responsiveness ----

std::pair<bool, std::string> criterion_responsiveness() {
    int passes = 0;
    for (int seed = 0; seed < 20; ++seed) {
        BocpdConfig config;
        config.hazard = HazardFunction{0.01};
        config.prune_log_threshold = -30.0;
        config.benign_prior = {NigParams{0.0, 1.0, 1.0, 1.0}};
        config.malicious_prior = {NigParams{0.0, 1.0, 1.0, 1.0}};
        config.mixing_weight = 0.99;

        std::mt19937 rng(4200 + seed);
        std::normal_distribution<double> noise;
        RunLengthPosterior posterior = init(config);
        bool dropped = false;
        for (int t = 0; t < 53; ++t) {
            const double shift = t >= 50 ? 8.0 : 0.0;
            const std::vector<double> x = {noise(rng) + shift};
            posterior = step(posterior, x, config).posterior;
            if (t >= 50 && map_run_length(posterior) < 5) dropped = true;
        }
        if (dropped) ++passes;
    }
    std::ostringstream detail;
    detail << passes << "/20 seeds dropped the MAP run length within 3 steps";
    return {passes >= 18, detail.str()};
}

// ---- criterion 6: baseline oracles ----

std::pair<bool, std::string> criterion_baseline_oracles() {
    std::mt19937 rng(24680);
    std::normal_distribution<double> value;
    std::uniform_int_distribution<int> n_dist(8, 40);
    std::uniform_int_distribution<int> d_dist(1, 3);
    const std::size_t ks[] = {1, 2, 5};

    double worst_lof = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = n_dist(rng);
        const int d = d_dist(rng);
        std::vector<std::vector<double>> train(n, std::vector<double>(d));
        for (auto& row : train)
            for (double& v : row) v = value(rng);
        std::vector<FeatureVector> train_fv(train.begin(), train.end());
        const std::size_t k = ks[trial % 3];
        const FittedBaseline lof =
            FittedBaseline::fit(BaselineKind::kLof, train_fv, k);
        for (int q = 0; q < 4; ++q) {
            std::vector<double> query(d);
            for (double& v : query) v = 2.0 * value(rng);
            worst_lof =
                std::max(worst_lof, std::abs(lof.score(query) -
                                             oracle::lof_bruteforce(train, query, k)));
        }
    }

    double worst_ecdf = 0.0;
    double worst_invariance = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 20 + trial;
        const int d = 1 + trial % 3;
        std::vector<std::vector<double>> train(n, std::vector<double>(d));
        for (auto& row : train)
            for (double& v : row) v = value(rng);
        std::vector<FeatureVector> train_fv(train.begin(), train.end());
        const FittedBaseline ecod =
            FittedBaseline::fit(BaselineKind::kEcod, train_fv);
        const FittedBaseline copod =
            FittedBaseline::fit(BaselineKind::kCopod, train_fv);

        std::vector<FeatureVector> mapped = train_fv;
        for (auto& row : mapped)
            for (double& v : row) v = std::exp(v);  // strictly monotone

        const FittedBaseline ecod_mapped =
            FittedBaseline::fit(BaselineKind::kEcod, mapped);
        for (int q = 0; q < 4; ++q) {
            std::vector<double> query(d);
            for (double& v : query) v = 2.5 * value(rng);
            const double direct = oracle::ecdf_tail_score(train, query);
            worst_ecdf = std::max(worst_ecdf,
                                  std::abs(ecod.score(query) - direct));
            worst_ecdf = std::max(worst_ecdf,
                                  std::abs(copod.score(query) - direct));
            std::vector<double> mapped_query(d);
            for (int j = 0; j < d; ++j) mapped_query[j] = std::exp(query[j]);
            worst_invariance =
                std::max(worst_invariance,
                         std::abs(ecod.score(query) -
                                  ecod_mapped.score(mapped_query)));
        }
    }
    std::ostringstream detail;
    detail << "max errors: lof=" << worst_lof << " ecdf=" << worst_ecdf
           << " monotone=" << worst_invariance;
    return {worst_lof <= 1e-9 && worst_ecdf <= 1e-9 &&
                worst_invariance <= 1e-9,
            detail.str()};
}

// ---- criterion 7: benchmark property (paper-figure surrogate) ----

std::pair<bool, std::string> criterion_benchmark() {
    const int seeds = 10;
    double det_sum = 0.0;
    double lof_sum = 0.0;
    double ecod_sum = 0.0;
    double copod_sum = 0.0;
    double min_auc = 1.0;

    for (int seed = 1; seed <= seeds; ++seed) {
        SyntheticConfig synth;  // defaults: d=4, len 2e4, rate 0.01, burst 20,
                                // drift on
        synth.seed = static_cast<std::uint64_t>(seed);
        SplitStream stream = split_events(generate_synthetic(synth),
                                          SplitFractions{0.5, 0.2, 0.3});
        standardize(stream);

        const DecisionPolicy policy = DecisionPolicy::make(1.0, 10.0, 0.01);
        const DetectorSettings settings;  // library defaults
        const BocpdConfig config =
            build_bocpd_config(settings, stream.train, policy.base_rate);
        const DetectionRun run = run_detector(config, stream.test, policy);

        LabeledScores det;
        for (const ScoredEvent& e : run.events) {
            det.scores.push_back(e.score);
            det.labels.push_back(e.label);
        }
        det_sum += pr_curve(det).auprc;
        min_auc = std::min(min_auc, roc_curve(det).auc);

        std::vector<FeatureVector> benign_train;
        for (const Event& e : stream.train) {
            if (e.label == 0) benign_train.push_back(e.features);
        }
        std::vector<FeatureVector> test_rows;
        std::vector<int> labels;
        for (const Event& e : stream.test) {
            test_rows.push_back(e.features);
            labels.push_back(e.label);
        }
        for (BaselineKind kind :
             {BaselineKind::kLof, BaselineKind::kEcod, BaselineKind::kCopod}) {
            const FittedBaseline fitted =
                FittedBaseline::fit(kind, benign_train, 20);
            LabeledScores data{fitted.score_stream(test_rows), labels};
            const double auprc = pr_curve(data).auprc;
            min_auc = std::min(min_auc, roc_curve(data).auc);
            if (kind == BaselineKind::kLof) lof_sum += auprc;
            if (kind == BaselineKind::kEcod) ecod_sum += auprc;
            if (kind == BaselineKind::kCopod) copod_sum += auprc;
        }
    }
    const double det_mean = det_sum / seeds;
    const double lof_mean = lof_sum / seeds;
    const double ecod_mean = ecod_sum / seeds;
    const double copod_mean = copod_sum / seeds;
    const bool pass = det_mean > lof_mean && det_mean > ecod_mean &&
                      det_mean > copod_mean && min_auc > 0.5;
    std::ostringstream detail;
    detail << "mean AUPRC det=" << det_mean << " lof=" << lof_mean
           << " ecod=" << ecod_mean << " copod=" << copod_mean
           << "; min AUC=" << min_auc;
    return {pass, detail.str()};
}

// ---- criterion 8: calibration on the detector's own model family ----

std::pair<bool, std::string> criterion_calibration() {
    const int seeds = 10;
    double ece_sum = 0.0;
    for (int seed = 1; seed <= seeds; ++seed) {
        const double pi = 0.95;  // benign weight
        const double benign_mean = 0.0;
        const double malicious_mean = 3.0;
        const double benign_sd = 1.0;
        const double malicious_sd = 2.0;

        // Matched, confident priors: predictive ~ the exact Gaussians.
        const double strength = 2e4;
        BocpdConfig config;
        config.hazard = HazardFunction{1e-4};  // iid stream, no changepoints
        config.prune_log_threshold = -30.0;
        config.mixing_weight = pi;
        config.benign_prior = {NigParams{benign_mean, strength, 0.5 * strength,
                                         0.5 * strength * benign_sd * benign_sd}};
        config.malicious_prior = {
            NigParams{malicious_mean, strength, 0.5 * strength,
                      0.5 * strength * malicious_sd * malicious_sd}};

        std::mt19937 rng(7000 + seed);
        std::bernoulli_distribution is_malicious(1.0 - pi);
        std::normal_distribution<double> benign(benign_mean, benign_sd);
        std::normal_distribution<double> malicious(malicious_mean, malicious_sd);

        LabeledScores data;
        RunLengthPosterior posterior = init(config);
        for (int t = 0; t < 1500; ++t) {
            const bool label = is_malicious(rng);
            const std::vector<double> x = {label ? malicious(rng) : benign(rng)};
            posterior = step(posterior, x, config).posterior;
            data.scores.push_back(incident_probability(posterior, x));
            data.labels.push_back(label ? 1 : 0);
        }
        ece_sum += reliability(data, 10).ece;
    }
    const double mean_ece = ece_sum / seeds;
    std::ostringstream detail;
    detail << "mean ECE over " << seeds << " seeds = " << mean_ece;
    return {mean_ece < 0.05, detail.str()};
}

// ---- criterion 9: metrics unit anchors ----

std::pair<bool, std::string> criterion_metric_anchors() {
    const double ap =
        pr_curve(LabeledScores{{0.9, 0.8, 0.7, 0.6}, {1, 0, 1, 0}}).auprc;
    const double auc = roc_curve(LabeledScores{{3.0, 2.0, 1.0}, {1, 0, 1}}).auc;
    const double ece =
        reliability(LabeledScores{{0.9, 0.9, 0.1, 0.1}, {1, 0, 0, 0}}, 10).ece;
    const bool pass = std::abs(ap - 5.0 / 6.0) <= 1e-9 &&
                      std::abs(auc - 0.5) <= 1e-9 &&
                      std::abs(ece - 0.25) <= 1e-9;
    std::ostringstream detail;
    detail << "AP=" << ap << " AUC=" << auc << " ECE=" << ece;
    return {pass, detail.str()};
}

// ---- criterion 10: CLI determinism ----

std::pair<bool, std::string> criterion_determinism() {
    const fs::path root =
        fs::temp_directory_path() / "driftguard_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);

    const fs::path cfg = root / "run.json";
    {
        std::ofstream out(cfg);
        out << R"({
  "seed": 5,
  "stream": {
    "synthetic": {"dimension": 2, "length": 3000, "attack_rate": 0.02,
                   "attack_shift": 5.0, "burst_length_mean": 10},
    "split_fractions": [0.5, 0.2, 0.3]
  },
  "detector": {"prior_strength": 50.0},
  "tuning": {"hazard_values": [0.005, 0.05], "scale_inflation_values": [10.0]}
})";
    }

    const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
        {"synth", {"synthetic.csv"}},
        {"detect", {"timeline.csv", "alerts.log", "summary.json"}},
        {"eval", {"metrics.json", "pr_detector.csv", "roc_detector.csv",
                  "reliability_detector.csv", "pr_lof.csv"}},
        {"tune", {"tuning.csv", "chosen_config.json"}},
    };

    for (const auto& [command, files] : runs) {
        const fs::path a = root / (command + "_a");
        const fs::path b = root / (command + "_b");
        const std::string args = command + " --config " + cfg.string();
        if (run_cli(args + " --out " + a.string()) != 0 ||
            run_cli(args + " --out " + b.string()) != 0) {
            return {false, command + " exited nonzero"};
        }
        for (const std::string& file : files) {
            if (slurp(a / file) != slurp(b / file)) {
                return {false, command + ": " + file + " differs between runs"};
            }
            if (slurp(a / file).empty()) {
                return {false, command + ": " + file + " is empty"};
            }
        }
    }
    // budget twice
    const fs::path ba = root / "budget_a";
    const fs::path bb = root / "budget_b";
    if (run_cli("budget --slo 0.999 --out " + ba.string()) != 0 ||
        run_cli("budget --slo 0.999 --out " + bb.string()) != 0) {
        return {false, "budget exited nonzero"};
    }
    if (slurp(ba / "budget.json") != slurp(bb / "budget.json")) {
        return {false, "budget.json differs between runs"};
    }
    fs::remove_all(root);
    return {true, "synth/detect/eval/tune/budget byte-identical across reruns"};
}

}  // namespace

int main() {
    std::printf("acceptance suite (library + %s)\n", DRIFTGUARD_CLI_PATH);
    run_criterion(1, "threshold formula", criterion_threshold);
    run_criterion(2, "budget arithmetic", criterion_budget);
    run_criterion(3, "BOCPD oracle equivalence", criterion_oracle_equivalence);
    run_criterion(4, "posterior normalization", criterion_normalization);
    run_criterion(5, "changepoint responsiveness", criterion_responsiveness);
    run_criterion(6, "baseline oracles", criterion_baseline_oracles);
    run_criterion(7, "paper-figure surrogate", criterion_benchmark);
    run_criterion(8, "calibration surrogate", criterion_calibration);
    run_criterion(9, "metrics unit anchors", criterion_metric_anchors);
    run_criterion(10, "CLI determinism", criterion_determinism);

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures;
}
