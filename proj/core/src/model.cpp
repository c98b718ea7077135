#include "driftguard/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace driftguard {

void require_finite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument("non-finite feature value at index " +
                                        std::to_string(i));
        }
    }
}

void NigParams::validate() const {
    if (!std::isfinite(mu) || !std::isfinite(kappa) || !std::isfinite(alpha) ||
        !std::isfinite(beta)) {
        throw std::invalid_argument("NigParams fields must be finite");
    }
    if (kappa <= 0.0 || alpha <= 0.0 || beta <= 0.0) {
        throw std::invalid_argument("NigParams requires kappa, alpha, beta > 0");
    }
}

NigParams nig_update(const NigParams& p, double x, double weight) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("nig_update: non-finite observation");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw std::invalid_argument("nig_update: weight must be finite and >= 0");
    }
    if (weight == 0.0) return p;
    const double kappa_new = p.kappa + weight;
    const double diff = x - p.mu;
    NigParams out;
    out.mu = (p.kappa * p.mu + weight * x) / kappa_new;
    out.kappa = kappa_new;
    out.alpha = p.alpha + 0.5 * weight;
    out.beta = p.beta + p.kappa * weight * diff * diff / (2.0 * kappa_new);
    return out;
}

namespace {

// Log of the Student-t normalization 1/(sqrt(nu)*B(1/2, nu/2)) with nu = 2a.
double student_t_log_norm(double alpha) {
    const double nu = 2.0 * alpha;
    return std::lgamma(alpha + 0.5) - std::lgamma(alpha) -
           0.5 * std::log(nu * std::numbers::pi);
}

}  // namespace

double nig_predictive_logpdf(const NigParams& p, double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("predictive_logpdf: non-finite input");
    }
    const double nu = 2.0 * p.alpha;
    const double scale2 = p.beta * (p.kappa + 1.0) / (p.alpha * p.kappa);
    const double z2 = (x - p.mu) * (x - p.mu) / scale2;
    return student_t_log_norm(p.alpha) - 0.5 * std::log(scale2) -
           (p.alpha + 0.5) * std::log1p(z2 / nu);
}

ConjugateModel::ConjugateModel(const std::vector<NigParams>& priors) {
    if (priors.empty()) {
        throw std::invalid_argument("ConjugateModel needs at least one dimension");
    }
    kappa_ = priors.front().kappa;
    alpha_ = priors.front().alpha;
    mu_.reserve(priors.size());
    beta_.reserve(priors.size());
    for (const NigParams& p : priors) {
        p.validate();
        if (p.kappa != kappa_ || p.alpha != alpha_) {
            throw std::invalid_argument(
                "ConjugateModel: kappa and alpha must match across dimensions");
        }
        mu_.push_back(p.mu);
        beta_.push_back(p.beta);
    }
}

ConjugateModel::ConjugateModel(std::size_t dimension, const NigParams& prior) {
    if (dimension == 0) {
        throw std::invalid_argument("ConjugateModel needs at least one dimension");
    }
    prior.validate();
    kappa_ = prior.kappa;
    alpha_ = prior.alpha;
    mu_.assign(dimension, prior.mu);
    beta_.assign(dimension, prior.beta);
}

NigParams ConjugateModel::params(std::size_t dim) const {
    if (dim >= mu_.size()) {
        throw std::out_of_range("ConjugateModel::params: dimension out of range");
    }
    return NigParams{mu_[dim], kappa_, alpha_, beta_[dim]};
}

void ConjugateModel::update(std::span<const double> x, double weight) {
    if (x.size() != mu_.size()) {
        throw std::invalid_argument("ConjugateModel::update: dimension mismatch");
    }
    require_finite(x);
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw std::invalid_argument("ConjugateModel::update: bad weight");
    }
    if (weight == 0.0) return;
    const double kappa_new = kappa_ + weight;
    for (std::size_t j = 0; j < mu_.size(); ++j) {
        const double diff = x[j] - mu_[j];
        beta_[j] += kappa_ * weight * diff * diff / (2.0 * kappa_new);
        mu_[j] = (kappa_ * mu_[j] + weight * x[j]) / kappa_new;
    }
    kappa_ = kappa_new;
    alpha_ += 0.5 * weight;
    ++observation_count_;
}

double ConjugateModel::predictive_logpdf(std::span<const double> x) const {
    if (x.size() != mu_.size()) {
        throw std::invalid_argument(
            "ConjugateModel::predictive_logpdf: dimension mismatch");
    }
    require_finite(x);
    const double nu = 2.0 * alpha_;
    // Per-dimension scale^2 is beta_j * shared_factor.
    const double shared_factor = (kappa_ + 1.0) / (alpha_ * kappa_);
    const double log_norm = student_t_log_norm(alpha_);
    double total = 0.0;
    for (std::size_t j = 0; j < mu_.size(); ++j) {
        const double scale2 = beta_[j] * shared_factor;
        const double z2 = (x[j] - mu_[j]) * (x[j] - mu_[j]) / scale2;
        total += log_norm - 0.5 * std::log(scale2) -
                 (alpha_ + 0.5) * std::log1p(z2 / nu);
    }
    return total;
}

ConjugateModel nig_update(ConjugateModel model, std::span<const double> x,
                          double weight) {
    model.update(x, weight);
    return model;
}

double predictive_logpdf(const ConjugateModel& model, std::span<const double> x) {
    return model.predictive_logpdf(x);
}

void HazardFunction::validate() const {
    if (!(hazard > 0.0) || !(hazard < 1.0)) {
        throw std::invalid_argument("hazard must lie strictly in (0, 1)");
    }
}

double hazard_probability(const HazardFunction& h, std::int64_t run_length) {
    h.validate();
    if (run_length < 0) {
        throw std::invalid_argument("run_length must be non-negative");
    }
    return h.hazard;
}

}  // namespace driftguard
