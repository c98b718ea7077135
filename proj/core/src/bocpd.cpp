#include "driftguard/bocpd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "driftguard/logspace.hpp"

namespace driftguard {

void BocpdConfig::validate() const {
    hazard.validate();
    if (!(prune_log_threshold < 0.0)) {
        throw std::invalid_argument("prune_log_threshold must be negative");
    }
    if (!(mixing_weight > 0.0) || !(mixing_weight < 1.0)) {
        throw std::invalid_argument("mixing_weight must lie strictly in (0, 1)");
    }
    if (benign_prior.empty() || benign_prior.size() != malicious_prior.size()) {
        throw std::invalid_argument(
            "benign and malicious priors must be nonempty and share dimension");
    }
    for (const NigParams& p : benign_prior) p.validate();
    for (const NigParams& p : malicious_prior) p.validate();
    if (max_run_length && *max_run_length < 1) {
        throw std::invalid_argument("max_run_length must be positive");
    }
}

void RunLengthPosterior::validate() const {
    if (run_lengths.empty() || run_lengths.size() != log_weights.size() ||
        run_lengths.size() != states.size()) {
        throw std::invalid_argument(
            "RunLengthPosterior arrays must be nonempty and parallel");
    }
    if (run_lengths.front() != 0) {
        throw std::invalid_argument("run lengths must start at 0");
    }
    for (std::size_t i = 1; i < run_lengths.size(); ++i) {
        if (run_lengths[i] <= run_lengths[i - 1]) {
            throw std::invalid_argument("run lengths must be strictly increasing");
        }
    }
    const double total = logsumexp(log_weights);
    if (!(std::abs(total) <= 1e-9)) {
        throw std::invalid_argument("run-length posterior is not normalized");
    }
}

RunLengthPosterior init(const BocpdConfig& config) {
    config.validate();
    MixtureState fresh;
    fresh.benign = ConjugateModel(config.benign_prior);
    fresh.malicious = ConjugateModel(config.malicious_prior);
    fresh.mixing_weight = config.mixing_weight;
    fresh.validate();

    RunLengthPosterior posterior;
    posterior.run_lengths = {0};
    posterior.log_weights = {0.0};
    posterior.states = {std::move(fresh)};
    return posterior;
}

StepResult step(const RunLengthPosterior& posterior, std::span<const double> x,
                const BocpdConfig& config) {
    const std::size_t n = posterior.size();
    if (n == 0) {
        throw std::invalid_argument("step: empty posterior");
    }
    if (x.size() != config.dimension()) {
        throw std::invalid_argument("step: dimension mismatch");
    }
    require_finite(x);

    const double hazard = config.hazard.hazard;
    const double log_hazard = std::log(hazard);
    const double log_growth = std::log1p(-hazard);

    // Predictive mass of each hypothesis; both transition branches share it.
    std::vector<double> log_mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_mass[i] =
            posterior.log_weights[i] + mixture_logpdf(posterior.states[i], x);
    }
    const double log_evidence = logsumexp(log_mass);
    if (log_evidence == kNegInf) {
        throw std::runtime_error(
            "step: total predictive mass underflowed (degenerate model)");
    }

    RunLengthPosterior next;
    next.run_lengths.reserve(n + 1);
    next.log_weights.reserve(n + 1);
    next.states.reserve(n + 1);

    // Changepoint hypothesis: pooled mass, fresh prior statistics.
    MixtureState fresh;
    fresh.benign = ConjugateModel(config.benign_prior);
    fresh.malicious = ConjugateModel(config.malicious_prior);
    fresh.mixing_weight = config.mixing_weight;
    next.run_lengths.push_back(0);
    next.log_weights.push_back(log_evidence + log_hazard);
    next.states.push_back(std::move(fresh));

    // Growth hypotheses, with optional folding at the run-length cap.
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t grown = posterior.run_lengths[i] + 1;
        const double lw = log_mass[i] + log_growth;
        if (config.max_run_length && grown > *config.max_run_length) {
            grown = *config.max_run_length;
        }
        if (!next.run_lengths.empty() && next.run_lengths.back() == grown) {
            // Fold into the cap hypothesis; keep the heavier contributor's
            // statistics (they describe the same long-lived run).
            double& held = next.log_weights.back();
            if (lw > held) {
                next.states.back() = mixture_update(posterior.states[i], x,
                                                    config.assignment);
            }
            held = log_add_exp(held, lw);
        } else {
            next.run_lengths.push_back(grown);
            next.log_weights.push_back(lw);
            next.states.push_back(
                mixture_update(posterior.states[i], x, config.assignment));
        }
    }

    // Normalize.
    const double total = logsumexp(next.log_weights);
    for (double& lw : next.log_weights) lw -= total;

    StepDiagnostics diagnostics;
    diagnostics.log_evidence = log_evidence;
    diagnostics.hypotheses_before_prune = next.size();

    // Floor pruning; the changepoint hypothesis r=0 is always kept so the
    // support keeps starting at 0.
    if (config.prune_log_threshold > kNegInf) {
        std::size_t kept = 0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (next.run_lengths[i] == 0 ||
                next.log_weights[i] >= config.prune_log_threshold) {
                next.run_lengths[kept] = next.run_lengths[i];
                next.log_weights[kept] = next.log_weights[i];
                if (kept != i) next.states[kept] = std::move(next.states[i]);
                ++kept;
            }
        }
        if (kept < next.size()) {
            next.run_lengths.resize(kept);
            next.log_weights.resize(kept);
            next.states.resize(kept);
            const double survivors = logsumexp(next.log_weights);
            for (double& lw : next.log_weights) lw -= survivors;
        }
    }
    diagnostics.hypotheses_after_prune = next.size();

    return StepResult{std::move(next), diagnostics};
}

std::int64_t map_run_length(const RunLengthPosterior& posterior) {
    if (posterior.size() == 0) {
        throw std::invalid_argument("map_run_length: empty posterior");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < posterior.size(); ++i) {
        if (posterior.log_weights[i] > posterior.log_weights[best]) {
            best = i;
        }
    }
    return posterior.run_lengths[best];
}

}  // namespace driftguard
