#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "driftguard/model.hpp"

namespace driftguard {

/// One ingested event: position in the stream, standardized or raw features,
/// and the {0,1} ground-truth label.
struct Event {
    std::int64_t t = 0;
    FeatureVector features;
    int label = 0;
};

/// An event after scoring: posterior incident probability plus the alert
/// decision taken against the active policy.
struct ScoredEvent {
    std::int64_t t = 0;
    FeatureVector features;
    double score = 0.0;  // posterior incident probability, in [0, 1]
    bool alert = false;
    int label = 0;
};

/// Desk-scale stand-in for imbalanced, drifting intrusion traces: a slowly
/// drifting benign Gaussian with occasional mean re-draws and rare
/// geometric-length attack bursts with shifted means.
struct SyntheticConfig {
    std::size_t dimension = 4;
    std::size_t length = 20000;
    double benign_mean_drift_rate = 0.01;  // per-step drift magnitude
    double attack_rate = 0.01;             // expected fraction of attack events
    double attack_shift = 4.0;             // mean shift in benign scale units
    double burst_length_mean = 20.0;
    double changepoint_hazard = 5e-4;      // benign mean re-draw probability
    std::uint64_t seed = 1;

    void validate() const;
};

std::vector<Event> generate_synthetic(const SyntheticConfig& config);

struct SplitFractions {
    double train = 0.5;
    double validation = 0.2;
    double test = 0.3;

    void validate() const;  // each > 0, sum to 1 within 1e-9
};

/// Where a stream comes from and how to interpret its columns.
struct StreamSpec {
    std::string path;  // empty: use `synthetic`
    std::optional<SyntheticConfig> synthetic;
    std::vector<std::string> feature_columns;  // empty: infer from header
    std::string label_column = "label";
    std::optional<std::string> timestamp_column;
    /// Values of the label column treated as benign; anything else is an
    /// attack. Matching is exact after trimming surrounding whitespace.
    std::vector<std::string> benign_labels = {"0", "benign", "BENIGN", "normal"};
    SplitFractions split_fractions;
};

struct SplitStream {
    std::vector<Event> train;
    std::vector<Event> validation;
    std::vector<Event> test;

    std::size_t total() const {
        return train.size() + validation.size() + test.size();
    }
};

/// Chronological split at floor(n*f) cumulative boundaries; the remainder
/// lands in the test segment.
SplitStream split_events(std::vector<Event> events,
                         const SplitFractions& fractions);

/// Reads (or generates) the stream and splits it chronologically. Rows keep
/// file order unless a timestamp column is named, in which case they are
/// stably sorted by it.
SplitStream load_stream(const StreamSpec& spec);

/// Per-feature affine transform fitted on the training segment only.
/// Zero-variance features map to 0 and are flagged.
class Standardizer {
public:
    static Standardizer fit(const std::vector<Event>& train);

    std::size_t dimension() const { return mean_.size(); }
    const std::vector<double>& means() const { return mean_; }
    const std::vector<double>& stddevs() const { return stddev_; }
    const std::vector<bool>& constant_features() const { return constant_; }

    FeatureVector transform(std::span<const double> x) const;
    void apply(std::vector<Event>& events) const;

private:
    std::vector<double> mean_;
    std::vector<double> stddev_;
    std::vector<bool> constant_;
};

/// Fits on the train segment and applies the transform to all three.
Standardizer standardize(SplitStream& stream);

/// Writes `t,f0..f{d-1},label` rows in the fixed CSV dialect.
void write_stream_csv(std::ostream& out, const std::vector<Event>& events,
                      std::size_t dimension);

}  // namespace driftguard
