#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace driftguard {

/// Standardized feature values for one event. Dimension is fixed for the
/// lifetime of a stream; all values must be finite.
using FeatureVector = std::vector<double>;

/// Throws std::invalid_argument if any value is NaN or infinite.
void require_finite(std::span<const double> values);

/// Normal–Inverse-Gamma state for a single dimension. Doubles as a prior
/// specification and as the posterior after any number of updates.
struct NigParams {
    double mu = 0.0;     // mean of the Normal over the location
    double kappa = 1.0;  // pseudo-count on the location
    double alpha = 1.0;  // Inverse-Gamma shape
    double beta = 1.0;   // Inverse-Gamma rate

    void validate() const;  // kappa, alpha, beta > 0 and everything finite
};

/// Conjugate update with a single observation of fractional weight
/// (weight 1 is the plain update; weight 0 is the identity).
NigParams nig_update(const NigParams& p, double x, double weight = 1.0);

/// Log density of the Student-t posterior predictive:
/// df = 2*alpha, location mu, scale sqrt(beta*(kappa+1)/(alpha*kappa)).
double nig_predictive_logpdf(const NigParams& p, double x);

/// Product of independent per-dimension Normal–Inverse-Gamma models.
/// Updates always apply one common weight to every dimension, so kappa and
/// alpha stay equal across dimensions and are stored once; mu and beta are
/// per-dimension.
class ConjugateModel {
public:
    ConjugateModel() = default;

    /// Per-dimension priors. All entries must share kappa and alpha.
    explicit ConjugateModel(const std::vector<NigParams>& priors);

    /// Same scalar prior replicated over `dimension` dimensions.
    ConjugateModel(std::size_t dimension, const NigParams& prior);

    std::size_t dimension() const { return mu_.size(); }
    std::int64_t observation_count() const { return observation_count_; }

    /// Materialized Normal–Inverse-Gamma state for one dimension.
    NigParams params(std::size_t dim) const;

    void update(std::span<const double> x, double weight = 1.0);

    /// Sum over dimensions of the Student-t predictive log density.
    double predictive_logpdf(std::span<const double> x) const;

private:
    double kappa_ = 1.0;
    double alpha_ = 1.0;
    std::vector<double> mu_;
    std::vector<double> beta_;
    std::int64_t observation_count_ = 0;
};

/// Value-style spellings of the conjugate update and predictive.
ConjugateModel nig_update(ConjugateModel model, std::span<const double> x,
                          double weight = 1.0);
double predictive_logpdf(const ConjugateModel& model, std::span<const double> x);

/// Constant per-step changepoint probability.
struct HazardFunction {
    double hazard = 0.01;  // in (0, 1)

    void validate() const;
};

/// Constant hazard: the run length is ignored.
double hazard_probability(const HazardFunction& h, std::int64_t run_length);

}  // namespace driftguard
