#include "driftguard/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driftguard {

std::string baseline_name(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::kLof: return "lof";
        case BaselineKind::kEcod: return "ecod";
        case BaselineKind::kCopod: return "copod";
    }
    throw std::invalid_argument("unknown baseline kind");
}

BaselineKind baseline_from_name(const std::string& name) {
    if (name == "lof") return BaselineKind::kLof;
    if (name == "ecod") return BaselineKind::kEcod;
    if (name == "copod") return BaselineKind::kCopod;
    throw std::invalid_argument("unknown baseline: " + name);
}

namespace {

double squared_distance(std::span<const double> a, const double* b,
                        std::size_t d) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = a[j] - b[j];
        sum += diff * diff;
    }
    return sum;
}

// k nearest training rows to x, ties broken by row index.
std::vector<std::pair<double, std::size_t>> k_nearest(
    std::span<const double> x, const std::vector<double>& train, std::size_t n,
    std::size_t d, std::size_t k, std::size_t skip = SIZE_MAX) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == skip) continue;
        dist.emplace_back(squared_distance(x, &train[i * d], d), i);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                      dist.end());
    dist.resize(k);
    for (auto& [d2, idx] : dist) d2 = std::sqrt(d2);
    return dist;
}

constexpr double kReachFloor = std::numeric_limits<double>::epsilon();

}  // namespace

FittedBaseline FittedBaseline::fit(BaselineKind kind,
                                   const std::vector<FeatureVector>& rows,
                                   std::size_t lof_k) {
    if (rows.empty()) {
        throw std::invalid_argument("baseline fit: empty training data");
    }
    const std::size_t d = rows.front().size();
    if (d == 0) {
        throw std::invalid_argument("baseline fit: zero-dimensional rows");
    }
    for (const FeatureVector& row : rows) {
        if (row.size() != d) {
            throw std::invalid_argument("baseline fit: ragged training matrix");
        }
        require_finite(row);
    }

    FittedBaseline fitted;
    fitted.kind_ = kind;
    fitted.dimension_ = d;
    fitted.n_ = rows.size();

    if (kind == BaselineKind::kLof) {
        if (rows.size() < 2) {
            throw std::invalid_argument("LOF needs at least two training rows");
        }
        fitted.lof_k_ = std::min(lof_k, rows.size() - 1);
        if (fitted.lof_k_ < 1) {
            throw std::invalid_argument("LOF: k out of range");
        }
        fitted.train_.reserve(rows.size() * d);
        for (const FeatureVector& row : rows) {
            fitted.train_.insert(fitted.train_.end(), row.begin(), row.end());
        }
        const std::size_t n = fitted.n_;
        const std::size_t k = fitted.lof_k_;
        std::vector<std::vector<std::pair<double, std::size_t>>> nbrs(n);
        fitted.k_distance_.resize(n);
        fitted.lrd_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::span<const double> xi(&fitted.train_[i * d], d);
            nbrs[i] = k_nearest(xi, fitted.train_, n, d, k, i);
            fitted.k_distance_[i] = nbrs[i].back().first;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double reach_sum = 0.0;
            for (const auto& [dist, j] : nbrs[i]) {
                reach_sum += std::max(fitted.k_distance_[j], dist);
            }
            fitted.lrd_[i] =
                static_cast<double>(k) / std::max(reach_sum, kReachFloor);
        }
    } else {
        fitted.sorted_.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            fitted.sorted_[j].reserve(rows.size());
            for (const FeatureVector& row : rows) {
                fitted.sorted_[j].push_back(row[j]);
            }
            std::sort(fitted.sorted_[j].begin(), fitted.sorted_[j].end());
        }
    }
    return fitted;
}

double FittedBaseline::score_lof(std::span<const double> x) const {
    const std::size_t k = lof_k_;
    const auto nbrs = k_nearest(x, train_, n_, dimension_, k);
    double reach_sum = 0.0;
    for (const auto& [dist, j] : nbrs) {
        reach_sum += std::max(k_distance_[j], dist);
    }
    const double lrd_x =
        static_cast<double>(k) / std::max(reach_sum, kReachFloor);
    double ratio_sum = 0.0;
    for (const auto& [dist, j] : nbrs) {
        ratio_sum += lrd_[j] / lrd_x;
    }
    return ratio_sum / static_cast<double>(k);
}

double FittedBaseline::score_ecdf_tails(std::span<const double> x) const {
    // Smoothed tail counts include the query: (#{t <= x} + 1)/(n + 1) on the
    // left, (#{t >= x} + 1)/(n + 1) on the right. Both stay in (0, 1].
    // The per-dimension corrected term takes the tail the query actually
    // sits in (the rarer side); unlike a raw-skewness rule this keeps the
    // score invariant under strictly monotone per-dimension transforms.
    const double denom = static_cast<double>(n_ + 1);
    double left_sum = 0.0;
    double right_sum = 0.0;
    double tail_sum = 0.0;
    for (std::size_t j = 0; j < dimension_; ++j) {
        const std::vector<double>& col = sorted_[j];
        const auto le =
            std::upper_bound(col.begin(), col.end(), x[j]) - col.begin();
        const auto ge = col.end() -
            std::lower_bound(col.begin(), col.end(), x[j]);
        const double o_left = -std::log((static_cast<double>(le) + 1.0) / denom);
        const double o_right = -std::log((static_cast<double>(ge) + 1.0) / denom);
        left_sum += o_left;
        right_sum += o_right;
        tail_sum += std::max(o_left, o_right);
    }
    return std::max({left_sum, right_sum, tail_sum});
}

double FittedBaseline::score(std::span<const double> x) const {
    if (x.size() != dimension_) {
        throw std::invalid_argument("baseline score: dimension mismatch");
    }
    require_finite(x);
    if (kind_ == BaselineKind::kLof) return score_lof(x);
    return score_ecdf_tails(x);
}

std::vector<double> FittedBaseline::score_stream(
    const std::vector<FeatureVector>& stream) const {
    std::vector<double> scores;
    scores.reserve(stream.size());
    for (std::size_t t = 0; t < stream.size(); ++t) {
        try {
            scores.push_back(score(stream[t]));
        } catch (const std::exception& e) {
            throw std::runtime_error("score_stream: event " + std::to_string(t) +
                                     ": " + e.what());
        }
    }
    return scores;
}

double lof_score(const FittedBaseline& fitted, std::span<const double> x) {
    if (fitted.kind() != BaselineKind::kLof) {
        throw std::invalid_argument("lof_score: baseline is not LOF");
    }
    return fitted.score(x);
}

double ecod_score(const FittedBaseline& fitted, std::span<const double> x) {
    if (fitted.kind() != BaselineKind::kEcod) {
        throw std::invalid_argument("ecod_score: baseline is not ECOD");
    }
    return fitted.score(x);
}

double copod_score(const FittedBaseline& fitted, std::span<const double> x) {
    if (fitted.kind() != BaselineKind::kCopod) {
        throw std::invalid_argument("copod_score: baseline is not COPOD");
    }
    return fitted.score(x);
}

}  // namespace driftguard
