#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "driftguard/risk.hpp"
#include "driftguard/stream.hpp"

namespace driftguard {

/// Anomaly scores (higher = more anomalous) with parallel {0,1} labels.
struct LabeledScores {
    std::vector<double> scores;
    std::vector<int> labels;

    void validate() const;  // parallel, nonempty, labels in {0,1}
    std::size_t positives() const;
};

struct CurvePoint {
    double x = 0.0;  // recall (PR) or false positive rate (ROC)
    double y = 0.0;  // precision (PR) or true positive rate (ROC)
    double threshold = 0.0;
};

struct PrCurveResult {
    std::vector<CurvePoint> points;
    double auprc = 0.0;
};

struct RocCurveResult {
    std::vector<CurvePoint> points;
    double auc = 0.0;
};

/// Precision-recall over all distinct thresholds (descending, ties grouped);
/// AUPRC by the step-wise average-precision rule.
PrCurveResult pr_curve(const LabeledScores& data);

/// TPR vs FPR over descending thresholds; AUC by the trapezoidal rule.
RocCurveResult roc_curve(const LabeledScores& data);

struct ReliabilityBin {
    double low = 0.0;   // bin covers (low, high]
    double high = 0.0;
    double mean_predicted = 0.0;
    double empirical_frequency = 0.0;
    std::size_t count = 0;
};

struct ReliabilityResult {
    std::vector<ReliabilityBin> bins;  // occupied bins only
    double ece = 0.0;
};

/// Equal-width bins on (0,1] with 0 placed in the first bin; scores must be
/// probabilities. ECE is the count-weighted |mean_predicted - frequency| sum.
ReliabilityResult reliability(const LabeledScores& data, std::size_t bins = 10);

struct TimelineRecord {
    std::int64_t t = 0;
    double score = 0.0;
    double threshold = 0.0;
    int label = 0;
    bool alert = false;
};

/// One record per event in chronological order; the alert column re-derives
/// decide(score, policy).
std::vector<TimelineRecord> timeline_export(const std::vector<ScoredEvent>& events,
                                            const DecisionPolicy& policy);

// Fixed-header CSV writers.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);
void write_timeline_csv(std::ostream& out,
                        const std::vector<TimelineRecord>& records);
void write_reliability_csv(std::ostream& out,
                           const std::vector<ReliabilityBin>& bins);

}  // namespace driftguard
