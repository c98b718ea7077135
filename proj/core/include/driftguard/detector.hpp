#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "driftguard/bocpd.hpp"
#include "driftguard/risk.hpp"
#include "driftguard/stream.hpp"

namespace driftguard {

/// How the malicious component's prior is obtained.
enum class MaliciousFit {
    kAuto,     // labeled attacks when the train window has enough, else inflate
    kLabels,   // fit on labeled attack rows; error if there are none
    kInflate,  // benign prior with beta inflated by scale_inflation
};

/// Detector knobs that sit above the raw BocpdConfig: prior fitting and
/// policy coupling defaults.
struct DetectorSettings {
    double hazard = 0.01;
    double prune_log_threshold = -30.0;
    std::optional<std::int64_t> max_run_length;
    /// Benign mixing weight; defaults to 1 - policy base rate.
    std::optional<double> mixing_weight;
    /// Pseudo-observation count of the fitted benign prior (> 2).
    double prior_strength = 300.0;
    double malicious_prior_strength = 4.0;
    double scale_inflation = 10.0;
    MaliciousFit malicious_fit = MaliciousFit::kAuto;
    Assignment assignment = Assignment::kSoft;

    void validate() const;
};

/// Moment-matched per-dimension priors from data rows: location at the
/// sample mean, predictive scale matched to the sample variance, confidence
/// set by `strength` pseudo-observations.
std::vector<NigParams> fit_prior(const std::vector<Event>& rows,
                                 std::size_t dimension, double strength);

/// Assembles the engine config: benign prior from benign train rows,
/// malicious prior per settings.malicious_fit.
BocpdConfig build_bocpd_config(const DetectorSettings& settings,
                               const std::vector<Event>& train,
                               double base_rate);

struct DetectionRun {
    std::vector<ScoredEvent> events;
    std::vector<double> step_log_evidence;
    std::vector<std::int64_t> map_run_lengths;

    double total_log_evidence() const;
};

/// Sequential pass over a segment: step, incident probability, decision.
DetectionRun run_detector(const BocpdConfig& config,
                          const std::vector<Event>& segment,
                          const DecisionPolicy& policy);

}  // namespace driftguard
