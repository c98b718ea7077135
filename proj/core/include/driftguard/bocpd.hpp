#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "driftguard/model.hpp"
#include "driftguard/risk.hpp"

namespace driftguard {

struct BocpdConfig {
    HazardFunction hazard{0.01};
    /// Hypotheses whose normalized log probability falls below this floor are
    /// dropped (the r=0 hypothesis is always kept). Must be negative.
    double prune_log_threshold = -30.0;
    /// Optional cap: growth past the cap folds into the cap hypothesis.
    std::optional<std::int64_t> max_run_length;
    /// Per-dimension priors; both component priors must share the dimension.
    std::vector<NigParams> benign_prior;
    std::vector<NigParams> malicious_prior;
    /// Benign-component weight seeded into every fresh MixtureState.
    double mixing_weight = 0.99;
    Assignment assignment = Assignment::kSoft;

    void validate() const;
    std::size_t dimension() const { return benign_prior.size(); }
};

/// Discrete posterior over hypothesized run lengths. Parallel arrays:
/// run_lengths strictly increasing starting at 0, log_weights normalized
/// (logsumexp == 0 within 1e-9), one MixtureState per hypothesis.
struct RunLengthPosterior {
    std::vector<std::int64_t> run_lengths;
    std::vector<double> log_weights;
    std::vector<MixtureState> states;

    std::size_t size() const { return run_lengths.size(); }
    void validate() const;
};

struct StepDiagnostics {
    /// Pre-normalization log evidence log sum_r w_r * p(x | r).
    double log_evidence = 0.0;
    std::size_t hypotheses_before_prune = 0;
    std::size_t hypotheses_after_prune = 0;
};

struct StepResult {
    RunLengthPosterior posterior;
    StepDiagnostics diagnostics;
};

/// Single hypothesis r=0 with probability 1, components seeded from priors.
RunLengthPosterior init(const BocpdConfig& config);

/// One growth/changepoint message-passing step followed by normalization,
/// optional cap folding, and floor pruning.
StepResult step(const RunLengthPosterior& posterior, std::span<const double> x,
                const BocpdConfig& config);

/// Run length with maximal posterior probability; ties break low.
std::int64_t map_run_length(const RunLengthPosterior& posterior);

}  // namespace driftguard
