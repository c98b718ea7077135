#include "driftguard/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "driftguard/bocpd.hpp"
#include "driftguard/logspace.hpp"

namespace driftguard {

void MixtureState::validate() const {
    if (!(mixing_weight > 0.0) || !(mixing_weight < 1.0)) {
        throw std::invalid_argument("mixing_weight must lie strictly in (0, 1)");
    }
    if (benign.dimension() != malicious.dimension()) {
        throw std::invalid_argument(
            "benign and malicious components must share one dimension");
    }
}

double mixture_logpdf(const MixtureState& state, std::span<const double> x) {
    const double lp_b = state.benign.predictive_logpdf(x);
    const double lp_m = state.malicious.predictive_logpdf(x);
    return log_add_exp(std::log(state.mixing_weight) + lp_b,
                       std::log1p(-state.mixing_weight) + lp_m);
}

double malicious_responsibility(const MixtureState& state,
                                std::span<const double> x) {
    const double lp_b = state.benign.predictive_logpdf(x);
    const double lp_m = state.malicious.predictive_logpdf(x);
    if (lp_b == kNegInf && lp_m == kNegInf) {
        throw std::runtime_error(
            "responsibility undefined: both component densities underflow");
    }
    const double pi = state.mixing_weight;
    // gamma = (1-pi) p_m / (pi p_b + (1-pi) p_m), evaluated through the
    // density ratio so that identical components give exactly 1-pi.
    const double diff = lp_b - lp_m;
    if (diff > 0.0) {
        // benign dominates; exp(-diff) <= 1 keeps the denominator tame
        const double w = (1.0 - pi) * std::exp(-diff);
        return w / (pi + w);
    }
    const double w = pi * std::exp(diff);
    return (1.0 - pi) / (w + (1.0 - pi));
}

MixtureState mixture_update(MixtureState state, std::span<const double> x,
                            Assignment assignment) {
    if (x.size() != state.dimension()) {
        throw std::invalid_argument("mixture_update: dimension mismatch");
    }
    double gamma = malicious_responsibility(state, x);
    if (assignment == Assignment::kHard) {
        gamma = gamma >= 0.5 ? 1.0 : 0.0;
    }
    state.benign.update(x, 1.0 - gamma);
    state.malicious.update(x, gamma);
    return state;
}

double incident_probability(const RunLengthPosterior& posterior,
                            std::span<const double> x) {
    if (posterior.size() == 0) {
        throw std::invalid_argument("incident_probability: empty posterior");
    }
    // logsumexp(log w_r + log gamma_r) - logsumexp(log w_r); the explicit
    // renormalization keeps the result inside [0,1] even when the stored
    // weights are only normalized to tolerance.
    double hi = kNegInf;
    for (double lw : posterior.log_weights) hi = std::max(hi, lw);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < posterior.size(); ++i) {
        const double w = std::exp(posterior.log_weights[i] - hi);
        num += w * malicious_responsibility(posterior.states[i], x);
        den += w;
    }
    return std::clamp(num / den, 0.0, 1.0);
}

double derive_threshold(double cost_fp, double cost_fn, double base_rate) {
    if (!(cost_fp > 0.0) || !std::isfinite(cost_fp)) {
        throw std::invalid_argument("cost_fp must be positive");
    }
    if (!(cost_fn > 0.0) || !std::isfinite(cost_fn)) {
        throw std::invalid_argument("cost_fn must be positive");
    }
    if (!(base_rate > 0.0) || !(base_rate < 1.0)) {
        throw std::invalid_argument("base_rate must lie strictly in (0, 1)");
    }
    const double fp_term = cost_fp * (1.0 - base_rate);
    return fp_term / (fp_term + cost_fn * base_rate);
}

DecisionPolicy DecisionPolicy::make(double cost_fp, double cost_fn,
                                    double base_rate) {
    DecisionPolicy policy;
    policy.cost_fp = cost_fp;
    policy.cost_fn = cost_fn;
    policy.base_rate = base_rate;
    policy.threshold = derive_threshold(cost_fp, cost_fn, base_rate);
    return policy;
}

void DecisionPolicy::validate() const {
    const double expected = derive_threshold(cost_fp, cost_fn, base_rate);
    if (std::abs(threshold - expected) > 1e-12) {
        throw std::invalid_argument("DecisionPolicy threshold is stale");
    }
}

bool decide(double probability, const DecisionPolicy& policy) {
    if (!(probability >= 0.0) || !(probability <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0, 1]");
    }
    return probability > policy.threshold;
}

ErrorBudget ErrorBudget::make(double slo, double period_minutes) {
    ErrorBudget budget;
    budget.slo = slo;
    budget.period_minutes = period_minutes;
    budget.budget_minutes = (1.0 - slo) * period_minutes;
    budget.validate();
    return budget;
}

void ErrorBudget::validate() const {
    if (!(slo > 0.0) || !(slo <= 1.0)) {
        throw std::invalid_argument("slo must lie in (0, 1]");
    }
    if (!(period_minutes > 0.0) || !std::isfinite(period_minutes)) {
        throw std::invalid_argument("period_minutes must be positive");
    }
    if (std::abs(budget_minutes - (1.0 - slo) * period_minutes) > 1e-9) {
        throw std::invalid_argument("budget_minutes is stale");
    }
}

BudgetCapacity budget_capacity(const ErrorBudget& budget,
                               const DecisionPolicy& policy) {
    budget.validate();
    policy.validate();
    BudgetCapacity capacity;
    capacity.max_false_alerts = static_cast<std::int64_t>(
        std::floor(budget.budget_minutes / policy.cost_fp));
    capacity.max_missed_incidents = static_cast<std::int64_t>(
        std::floor(budget.budget_minutes / policy.cost_fn));
    return capacity;
}

}  // namespace driftguard
