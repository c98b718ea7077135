#pragma once

#include <cstdint>
#include <span>

#include "driftguard/model.hpp"

namespace driftguard {

struct RunLengthPosterior;  // bocpd.hpp

/// How observations are attributed to mixture components during updates.
enum class Assignment {
    kSoft,  // fractional-weight updates by responsibility
    kHard,  // responsibility rounded to {0, 1}
};

/// Benign/malicious component pair plus the benign mixing weight.
struct MixtureState {
    ConjugateModel benign;
    ConjugateModel malicious;
    double mixing_weight = 0.5;  // benign-component weight, in (0, 1)

    void validate() const;
    std::size_t dimension() const { return benign.dimension(); }
};

/// Log of the mixture predictive density pi*p_b(x) + (1-pi)*p_m(x).
double mixture_logpdf(const MixtureState& state, std::span<const double> x);

/// Posterior probability that x came from the malicious component.
double malicious_responsibility(const MixtureState& state,
                                std::span<const double> x);

/// Responsibility-weighted conjugate update of both components.
MixtureState mixture_update(MixtureState state, std::span<const double> x,
                            Assignment assignment = Assignment::kSoft);

/// Run-length-marginalized malicious responsibility P(y_t=1 | x_{1:t}).
/// The posterior is expected to have already absorbed x via the current step.
double incident_probability(const RunLengthPosterior& posterior,
                            std::span<const double> x);

/// Misclassification costs, incident base rate, and the derived alert
/// threshold, cached at construction.
struct DecisionPolicy {
    double cost_fp = 1.0;    // minutes of analyst time per false alert
    double cost_fn = 10.0;   // minutes of downtime per missed incident
    double base_rate = 0.01; // prior incident probability, in (0, 1)
    double threshold = 0.0;  // derived, cached

    static DecisionPolicy make(double cost_fp, double cost_fn, double base_rate);
    void validate() const;
};

/// T = C_FP*(1-rho) / (C_FP*(1-rho) + C_FN*rho).
double derive_threshold(double cost_fp, double cost_fn, double base_rate);

/// Alert iff probability strictly exceeds the policy threshold.
bool decide(double probability, const DecisionPolicy& policy);

/// Availability objective over a period and the implied allowance.
struct ErrorBudget {
    double slo = 0.999;              // in (0, 1]
    double period_minutes = 43200.0; // e.g. a 30-day month
    double budget_minutes = 0.0;     // derived, (1-slo)*period_minutes

    static ErrorBudget make(double slo, double period_minutes);
    void validate() const;
};

struct BudgetCapacity {
    std::int64_t max_false_alerts = 0;
    std::int64_t max_missed_incidents = 0;
};

/// Largest false-alert and missed-incident counts whose cost fits within
/// the budget (floor arithmetic).
BudgetCapacity budget_capacity(const ErrorBudget& budget,
                               const DecisionPolicy& policy);

}  // namespace driftguard
