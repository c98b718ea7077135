#include "driftguard/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "driftguard/csv.hpp"

namespace driftguard {

void LabeledScores::validate() const {
    if (scores.empty() || scores.size() != labels.size()) {
        throw std::invalid_argument(
            "LabeledScores: scores and labels must be parallel and nonempty");
    }
    for (double s : scores) {
        if (std::isnan(s)) {
            throw std::invalid_argument("LabeledScores: NaN score");
        }
    }
    for (int label : labels) {
        if (label != 0 && label != 1) {
            throw std::invalid_argument("LabeledScores: labels must be 0 or 1");
        }
    }
}

std::size_t LabeledScores::positives() const {
    return static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), 1));
}

namespace {

// Cumulative (TP, FP) at each distinct threshold, descending.
struct ThresholdSweep {
    std::vector<double> thresholds;
    std::vector<std::size_t> tp;
    std::vector<std::size_t> fp;
};

ThresholdSweep sweep(const LabeledScores& data) {
    std::vector<std::size_t> order(data.scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return data.scores[a] > data.scores[b];
                     });
    ThresholdSweep out;
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t idx = order[i];
        if (data.labels[idx] == 1) {
            ++tp;
        } else {
            ++fp;
        }
        const bool last_of_group = i + 1 == order.size() ||
                                   data.scores[order[i + 1]] != data.scores[idx];
        if (last_of_group) {
            out.thresholds.push_back(data.scores[idx]);
            out.tp.push_back(tp);
            out.fp.push_back(fp);
        }
    }
    return out;
}

}  // namespace

PrCurveResult pr_curve(const LabeledScores& data) {
    data.validate();
    const std::size_t positives = data.positives();
    if (positives == 0) {
        throw std::invalid_argument("pr_curve: no positive labels");
    }
    const ThresholdSweep s = sweep(data);

    PrCurveResult result;
    result.points.push_back(
        CurvePoint{0.0, 1.0, std::numeric_limits<double>::infinity()});
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
        const double recall = static_cast<double>(s.tp[i]) / positives;
        const double precision =
            static_cast<double>(s.tp[i]) / static_cast<double>(s.tp[i] + s.fp[i]);
        result.points.push_back(CurvePoint{recall, precision, s.thresholds[i]});
        result.auprc += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return result;
}

RocCurveResult roc_curve(const LabeledScores& data) {
    data.validate();
    const std::size_t positives = data.positives();
    const std::size_t negatives = data.labels.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw std::invalid_argument("roc_curve: needs both classes");
    }
    const ThresholdSweep s = sweep(data);

    RocCurveResult result;
    result.points.push_back(
        CurvePoint{0.0, 0.0, std::numeric_limits<double>::infinity()});
    double prev_fpr = 0.0;
    double prev_tpr = 0.0;
    for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
        const double tpr = static_cast<double>(s.tp[i]) / positives;
        const double fpr = static_cast<double>(s.fp[i]) / negatives;
        result.points.push_back(CurvePoint{fpr, tpr, s.thresholds[i]});
        result.auc += (fpr - prev_fpr) * 0.5 * (tpr + prev_tpr);
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    return result;
}

ReliabilityResult reliability(const LabeledScores& data, std::size_t bins) {
    data.validate();
    if (bins == 0) {
        throw std::invalid_argument("reliability: bins must be positive");
    }
    for (double s : data.scores) {
        if (!(s >= 0.0) || !(s <= 1.0)) {
            throw std::invalid_argument(
                "reliability: scores must be probabilities in [0, 1]");
        }
    }
    const double width = 1.0 / static_cast<double>(bins);
    std::vector<double> sum_pred(bins, 0.0);
    std::vector<double> sum_label(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);
    for (std::size_t i = 0; i < data.scores.size(); ++i) {
        const double p = data.scores[i];
        // Bins are (low, high]; 0 lands in the first bin. The 1e-9 nudge keeps
        // representable boundary values (0.2, 0.3, ...) in their own bin.
        const double raw = std::ceil(p * static_cast<double>(bins) - 1e-9) - 1.0;
        const std::size_t b = static_cast<std::size_t>(
            std::clamp(raw, 0.0, static_cast<double>(bins - 1)));
        sum_pred[b] += p;
        sum_label[b] += data.labels[i];
        ++count[b];
    }

    ReliabilityResult result;
    const double n = static_cast<double>(data.scores.size());
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] == 0) continue;
        ReliabilityBin bin;
        bin.low = width * static_cast<double>(b);
        bin.high = width * static_cast<double>(b + 1);
        bin.mean_predicted = sum_pred[b] / static_cast<double>(count[b]);
        bin.empirical_frequency = sum_label[b] / static_cast<double>(count[b]);
        bin.count = count[b];
        result.ece += (static_cast<double>(count[b]) / n) *
                      std::abs(bin.mean_predicted - bin.empirical_frequency);
        result.bins.push_back(bin);
    }
    return result;
}

std::vector<TimelineRecord> timeline_export(const std::vector<ScoredEvent>& events,
                                            const DecisionPolicy& policy) {
    policy.validate();
    std::vector<TimelineRecord> records;
    records.reserve(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (i > 0 && events[i].t <= events[i - 1].t) {
            throw std::invalid_argument(
                "timeline_export: out-of-order timestamp at index " +
                std::to_string(i));
        }
        TimelineRecord record;
        record.t = events[i].t;
        record.score = events[i].score;
        record.threshold = policy.threshold;
        record.label = events[i].label;
        record.alert = decide(events[i].score, policy);
        records.push_back(record);
    }
    return records;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
    out << "threshold,x,y\n";
    for (const CurvePoint& p : points) {
        out << format_double(p.threshold) << ',' << format_double(p.x) << ','
            << format_double(p.y) << '\n';
    }
}

void write_timeline_csv(std::ostream& out,
                        const std::vector<TimelineRecord>& records) {
    out << "t,score,threshold,label,alert\n";
    for (const TimelineRecord& r : records) {
        out << r.t << ',' << format_double(r.score) << ','
            << format_double(r.threshold) << ',' << r.label << ','
            << (r.alert ? 1 : 0) << '\n';
    }
}

void write_reliability_csv(std::ostream& out,
                           const std::vector<ReliabilityBin>& bins) {
    out << "bin_low,bin_high,mean_pred,emp_freq,count\n";
    for (const ReliabilityBin& b : bins) {
        out << format_double(b.low) << ',' << format_double(b.high) << ','
            << format_double(b.mean_predicted) << ','
            << format_double(b.empirical_frequency) << ',' << b.count << '\n';
    }
}

}  // namespace driftguard
