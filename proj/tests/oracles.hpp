#pragma once

// Independent reference implementations used only by tests. Everything here
// is written from the definitions directly (naive loops, enumeration,
// quadrature) and deliberately avoids the library's code paths.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

struct Nig {
    double mu, kappa, alpha, beta;
};

// Closed-form batch posterior from weighted sufficient statistics
// (sum w, sum w*x, sum w*x^2).
Nig batch_nig_posterior(const Nig& prior, std::span<const double> xs,
                        std::span<const double> weights);

// Scalar posterior predictive via the marginal-likelihood normalizer ratio
// (a different algebraic route than the Student-t density formula).
double nig_predictive_logpdf_ratio(const Nig& params, double x);

double normal_logpdf(double x, double mean, double variance);

// Predictive density at x by 2-D numerical integration of the Normal
// likelihood against the NIG prior over (mu, log sigma^2).
double nig_predictive_quadrature(const Nig& prior, double x);

// ---- BOCPD enumeration ----

struct EnumerationModel {
    std::vector<Nig> benign;     // per-dimension priors
    std::vector<Nig> malicious;  // per-dimension priors
    double mixing_weight;        // benign weight pi
};

// Run-length posterior P(r_t | x_{1:t}) for every step t in [1, data size],
// by exhaustive enumeration over reset subsets. Feasible for T <= 10.
// Each element of data is one observation (d-dimensional).
std::vector<std::vector<double>> bocpd_enumeration(
    const std::vector<std::vector<double>>& data, double hazard,
    const EnumerationModel& model);

// ---- baselines ----

// Brute-force LOF (novelty mode): neighbors by (distance, index) order.
double lof_bruteforce(const std::vector<std::vector<double>>& train,
                      std::span<const double> query, std::size_t k);

// Direct ECDF tail score with (count+1)/(n+1) smoothing, counting loops only.
double ecdf_tail_score(const std::vector<std::vector<double>>& train,
                       std::span<const double> query);

// ---- metrics ----

// Average precision by explicit per-threshold recount.
double average_precision_sweep(const std::vector<double>& scores,
                               const std::vector<int>& labels);

// AUC as the Mann-Whitney statistic (ties get half credit).
double auc_mann_whitney(const std::vector<double>& scores,
                        const std::vector<int>& labels);

}  // namespace oracle
