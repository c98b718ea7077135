#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace driftguard {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

inline double logsumexp(std::span<const double> values) {
    double hi = kNegInf;
    for (double v : values) {
        if (v > hi) hi = v;
    }
    if (hi == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double v : values) {
        acc += std::exp(v - hi);
    }
    return hi + std::log(acc);
}

}  // namespace driftguard
