#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "driftguard/model.hpp"

namespace driftguard {

enum class BaselineKind { kLof, kEcod, kCopod };

std::string baseline_name(BaselineKind kind);
BaselineKind baseline_from_name(const std::string& name);

/// Unsupervised detector fitted once on benign training rows and applied
/// statically afterwards (novelty mode). Immutable after fit; concurrent
/// scoring is safe.
class FittedBaseline {
public:
    /// lof_k is ignored for ECOD/COPOD. For LOF it is clamped to n-1.
    static FittedBaseline fit(BaselineKind kind,
                              const std::vector<FeatureVector>& training_rows,
                              std::size_t lof_k = 20);

    BaselineKind kind() const { return kind_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t training_size() const { return n_; }
    std::size_t lof_k() const { return lof_k_; }

    double score(std::span<const double> x) const;
    std::vector<double> score_stream(
        const std::vector<FeatureVector>& stream) const;

private:
    FittedBaseline() = default;

    double score_lof(std::span<const double> x) const;
    double score_ecdf_tails(std::span<const double> x) const;

    BaselineKind kind_ = BaselineKind::kLof;
    std::size_t dimension_ = 0;
    std::size_t n_ = 0;

    // LOF state: row-major training matrix plus per-point k-distance and
    // local reachability density.
    std::vector<double> train_;
    std::size_t lof_k_ = 0;
    std::vector<double> k_distance_;
    std::vector<double> lrd_;

    // ECOD/COPOD state: per-dimension sorted training values.
    std::vector<std::vector<double>> sorted_;
};

/// Standard LOF with Euclidean distances, query scored against the training
/// set. Higher = more anomalous.
double lof_score(const FittedBaseline& fitted, std::span<const double> x);

/// ECDF tail score with (count+1)/(n+1) smoothing; max of summed left tails,
/// summed right tails, and the per-dimension dominant-tail combination.
double ecod_score(const FittedBaseline& fitted, std::span<const double> x);

/// Empirical-copula tail score; coincides with ecod_score under the
/// dimension-independent construction used here.
double copod_score(const FittedBaseline& fitted, std::span<const double> x);

}  // namespace driftguard
