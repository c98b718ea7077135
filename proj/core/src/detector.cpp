#include "driftguard/detector.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace driftguard {

namespace {

// Below this many labeled attack rows, kAuto falls back to the inflated
// benign prior.
constexpr std::size_t kMinAttackRowsForFit = 8;

// Variance floor for fitted priors; keeps beta positive for constant
// (already-standardized) features.
constexpr double kVarianceFloor = 1e-9;

}  // namespace

void DetectorSettings::validate() const {
    HazardFunction{hazard}.validate();
    if (!(prune_log_threshold < 0.0)) {
        throw std::invalid_argument("prune_log_threshold must be negative");
    }
    if (!(prior_strength > 2.0) || !(malicious_prior_strength > 2.0)) {
        throw std::invalid_argument("prior strengths must exceed 2");
    }
    if (!(scale_inflation > 0.0)) {
        throw std::invalid_argument("scale_inflation must be positive");
    }
    if (mixing_weight && (!(*mixing_weight > 0.0) || !(*mixing_weight < 1.0))) {
        throw std::invalid_argument("mixing_weight must lie strictly in (0, 1)");
    }
    if (max_run_length && *max_run_length < 1) {
        throw std::invalid_argument("max_run_length must be positive");
    }
}

std::vector<NigParams> fit_prior(const std::vector<Event>& rows,
                                 std::size_t dimension, double strength) {
    if (rows.empty()) {
        throw std::invalid_argument("fit_prior: no rows");
    }
    if (!(strength > 2.0)) {
        throw std::invalid_argument("fit_prior: strength must exceed 2");
    }
    std::vector<double> mean(dimension, 0.0);
    std::vector<double> var(dimension, 0.0);
    const double n = static_cast<double>(rows.size());
    for (const Event& e : rows) {
        if (e.features.size() != dimension) {
            throw std::invalid_argument("fit_prior: dimension mismatch");
        }
        for (std::size_t j = 0; j < dimension; ++j) mean[j] += e.features[j];
    }
    for (double& m : mean) m /= n;
    for (const Event& e : rows) {
        for (std::size_t j = 0; j < dimension; ++j) {
            const double c = e.features[j] - mean[j];
            var[j] += c * c;
        }
    }
    std::vector<NigParams> priors(dimension);
    for (std::size_t j = 0; j < dimension; ++j) {
        var[j] = std::max(var[j] / n, kVarianceFloor);
        // kappa = strength, alpha = strength/2 gives predictive variance
        // var*(strength+1)/strength, i.e. the sample variance as strength grows.
        priors[j] = NigParams{mean[j], strength, 0.5 * strength,
                              var[j] * 0.5 * strength};
    }
    return priors;
}

BocpdConfig build_bocpd_config(const DetectorSettings& settings,
                               const std::vector<Event>& train,
                               double base_rate) {
    settings.validate();
    if (train.empty()) {
        throw std::invalid_argument("build_bocpd_config: empty training segment");
    }
    const std::size_t dimension = train.front().features.size();

    std::vector<Event> benign_rows;
    std::vector<Event> attack_rows;
    for (const Event& e : train) {
        (e.label == 0 ? benign_rows : attack_rows).push_back(e);
    }
    if (benign_rows.empty()) {
        throw std::invalid_argument(
            "build_bocpd_config: training segment has no benign rows");
    }

    BocpdConfig config;
    config.hazard = HazardFunction{settings.hazard};
    config.prune_log_threshold = settings.prune_log_threshold;
    config.max_run_length = settings.max_run_length;
    config.assignment = settings.assignment;
    config.mixing_weight =
        settings.mixing_weight ? *settings.mixing_weight : 1.0 - base_rate;
    config.benign_prior = fit_prior(benign_rows, dimension,
                                    settings.prior_strength);

    const bool fit_from_labels =
        settings.malicious_fit == MaliciousFit::kLabels ||
        (settings.malicious_fit == MaliciousFit::kAuto &&
         attack_rows.size() >= kMinAttackRowsForFit);
    if (settings.malicious_fit == MaliciousFit::kLabels && attack_rows.empty()) {
        throw std::invalid_argument(
            "malicious_fit=labels but the training segment has no attack rows");
    }
    if (fit_from_labels && !attack_rows.empty()) {
        config.malicious_prior = fit_prior(attack_rows, dimension,
                                           settings.malicious_prior_strength);
    } else {
        // Diffuse "anything unusual" component: benign prior with inflated
        // beta, at the malicious strength.
        config.malicious_prior = fit_prior(benign_rows, dimension,
                                           settings.malicious_prior_strength);
        for (NigParams& p : config.malicious_prior) {
            p.beta *= settings.scale_inflation;
        }
    }
    config.validate();
    return config;
}

double DetectionRun::total_log_evidence() const {
    return std::accumulate(step_log_evidence.begin(), step_log_evidence.end(),
                           0.0);
}

DetectionRun run_detector(const BocpdConfig& config,
                          const std::vector<Event>& segment,
                          const DecisionPolicy& policy) {
    policy.validate();
    DetectionRun run;
    run.events.reserve(segment.size());
    run.step_log_evidence.reserve(segment.size());
    run.map_run_lengths.reserve(segment.size());

    RunLengthPosterior posterior = init(config);
    for (const Event& e : segment) {
        StepResult result = step(posterior, e.features, config);
        posterior = std::move(result.posterior);
        const double probability = incident_probability(posterior, e.features);

        ScoredEvent scored;
        scored.t = e.t;
        scored.features = e.features;
        scored.score = probability;
        scored.alert = decide(probability, policy);
        scored.label = e.label;
        run.events.push_back(std::move(scored));
        run.step_log_evidence.push_back(result.diagnostics.log_evidence);
        run.map_run_lengths.push_back(map_run_length(posterior));
    }
    return run;
}

}  // namespace driftguard
