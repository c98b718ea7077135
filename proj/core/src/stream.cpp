#include "driftguard/stream.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "driftguard/csv.hpp"

namespace driftguard {

std::vector<std::string> split_csv_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string join_csv_record(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) line.push_back(',');
        const std::string& f = fields[i];
        if (f.find_first_of(",\"") != std::string::npos) {
            line.push_back('"');
            for (char c : f) {
                if (c == '"') line.push_back('"');
                line.push_back(c);
            }
            line.push_back('"');
        } else {
            line += f;
        }
    }
    return line;
}

void SyntheticConfig::validate() const {
    if (dimension == 0) throw std::invalid_argument("dimension must be positive");
    if (!(attack_rate >= 0.0) || !(attack_rate < 0.5)) {
        throw std::invalid_argument("attack_rate must lie in [0, 0.5)");
    }
    if (!(burst_length_mean >= 1.0)) {
        throw std::invalid_argument("burst_length_mean must be >= 1");
    }
    if (!(changepoint_hazard >= 0.0) || !(changepoint_hazard < 1.0)) {
        throw std::invalid_argument("changepoint_hazard must lie in [0, 1)");
    }
    if (!(benign_mean_drift_rate >= 0.0)) {
        throw std::invalid_argument("benign_mean_drift_rate must be >= 0");
    }
}

std::vector<Event> generate_synthetic(const SyntheticConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> unit;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const std::size_t d = config.dimension;
    std::vector<double> mean(d, 0.0);
    std::vector<double> attack_direction(d, 0.0);

    // Burst-start probability chosen so the long-run attack fraction
    // converges to attack_rate given mean burst length L:
    // L / (L + 1/q) = rate  =>  q = rate / (L * (1 - rate)).
    const double burst_start_prob =
        config.attack_rate > 0.0
            ? config.attack_rate /
                  (config.burst_length_mean * (1.0 - config.attack_rate))
            : 0.0;
    // Burst length = 1 + Geometric(p) failures, mean = 1/p.
    const double geom_p = 1.0 / config.burst_length_mean;

    std::vector<Event> events;
    events.reserve(config.length);
    std::size_t burst_remaining = 0;

    for (std::size_t t = 0; t < config.length; ++t) {
        if (config.changepoint_hazard > 0.0 &&
            uniform(rng) < config.changepoint_hazard) {
            for (double& m : mean) m = unit(rng);
        }
        if (config.benign_mean_drift_rate > 0.0) {
            for (double& m : mean) {
                m += config.benign_mean_drift_rate * unit(rng);
            }
        }

        if (burst_remaining == 0 && burst_start_prob > 0.0 &&
            uniform(rng) < burst_start_prob) {
            burst_remaining = 1;
            if (geom_p < 1.0) {
                std::geometric_distribution<std::size_t> extra(geom_p);
                burst_remaining += extra(rng);
            }
            double norm = 0.0;
            for (double& a : attack_direction) {
                a = unit(rng);
                norm += a * a;
            }
            norm = std::sqrt(std::max(norm, 1e-12));
            for (double& a : attack_direction) a /= norm;
        }

        Event event;
        event.t = static_cast<std::int64_t>(t);
        event.features.resize(d);
        if (burst_remaining > 0) {
            event.label = 1;
            --burst_remaining;
            for (std::size_t j = 0; j < d; ++j) {
                event.features[j] =
                    mean[j] + config.attack_shift * attack_direction[j] + unit(rng);
            }
        } else {
            event.label = 0;
            for (std::size_t j = 0; j < d; ++j) {
                event.features[j] = mean[j] + unit(rng);
            }
        }
        events.push_back(std::move(event));
    }
    return events;
}

void SplitFractions::validate() const {
    if (!(train > 0.0) || !(validation > 0.0) || !(test > 0.0)) {
        throw std::invalid_argument("split fractions must each be positive");
    }
    if (std::abs(train + validation + test - 1.0) > 1e-9) {
        throw std::invalid_argument("split fractions must sum to 1");
    }
}

SplitStream split_events(std::vector<Event> events,
                         const SplitFractions& fractions) {
    fractions.validate();
    const double n = static_cast<double>(events.size());
    const std::size_t train_end =
        static_cast<std::size_t>(std::floor(n * fractions.train));
    const std::size_t val_end = static_cast<std::size_t>(
        std::floor(n * (fractions.train + fractions.validation)));

    SplitStream out;
    out.train.assign(events.begin(), events.begin() + train_end);
    out.validation.assign(events.begin() + train_end, events.begin() + val_end);
    out.test.assign(events.begin() + val_end, events.end());
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<Event> read_labeled_csv(const StreamSpec& spec) {
    std::ifstream file(spec.path);
    if (!file) {
        throw std::runtime_error("cannot open stream file: " + spec.path);
    }
    std::string line;
    if (!std::getline(file, line)) {
        throw std::runtime_error("empty stream file: " + spec.path);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_record(line);

    std::unordered_map<std::string, std::size_t> column_index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column_index[trim(header[i])] = i;
    }
    const auto find_column = [&](const std::string& name) {
        const auto it = column_index.find(name);
        if (it == column_index.end()) {
            throw std::runtime_error("missing column '" + name + "' in " +
                                     spec.path);
        }
        return it->second;
    };

    const std::size_t label_col = find_column(spec.label_column);
    std::optional<std::size_t> time_col;
    if (spec.timestamp_column) {
        time_col = find_column(*spec.timestamp_column);
    }

    std::vector<std::string> feature_names = spec.feature_columns;
    if (feature_names.empty()) {
        for (const std::string& raw : header) {
            const std::string name = trim(raw);
            if (name == spec.label_column) continue;
            if (spec.timestamp_column && name == *spec.timestamp_column) continue;
            feature_names.push_back(name);
        }
        if (feature_names.empty()) {
            throw std::runtime_error("no feature columns in " + spec.path);
        }
    }
    std::vector<std::size_t> feature_cols;
    feature_cols.reserve(feature_names.size());
    for (const std::string& name : feature_names) {
        feature_cols.push_back(find_column(name));
    }

    std::vector<Event> events;
    std::vector<double> timestamps;
    std::size_t row = 0;
    while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const std::vector<std::string> fields = split_csv_record(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("row " + std::to_string(row) + ": expected " +
                                     std::to_string(header.size()) +
                                     " fields, got " +
                                     std::to_string(fields.size()));
        }
        Event event;
        event.features.reserve(feature_cols.size());
        for (std::size_t j = 0; j < feature_cols.size(); ++j) {
            double value = 0.0;
            try {
                value = parse_double(trim(fields[feature_cols[j]]));
            } catch (const std::exception&) {
                throw std::runtime_error("row " + std::to_string(row) +
                                         ", column '" + feature_names[j] +
                                         "': unparseable numeric cell '" +
                                         fields[feature_cols[j]] + "'");
            }
            if (!std::isfinite(value)) {
                throw std::runtime_error("row " + std::to_string(row) +
                                         ", column '" + feature_names[j] +
                                         "': non-finite value");
            }
            event.features.push_back(value);
        }
        const std::string label = trim(fields[label_col]);
        event.label =
            std::find(spec.benign_labels.begin(), spec.benign_labels.end(),
                      label) == spec.benign_labels.end()
                ? 1
                : 0;
        if (time_col) {
            double stamp = 0.0;
            try {
                stamp = parse_double(trim(fields[*time_col]));
            } catch (const std::exception&) {
                throw std::runtime_error("row " + std::to_string(row) +
                                         ", column '" + *spec.timestamp_column +
                                         "': unparseable timestamp");
            }
            timestamps.push_back(stamp);
        }
        events.push_back(std::move(event));
    }
    if (events.empty()) {
        throw std::runtime_error("no data rows in " + spec.path);
    }

    if (time_col) {
        std::vector<std::size_t> order(events.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return timestamps[a] < timestamps[b];
                         });
        std::vector<Event> sorted;
        sorted.reserve(events.size());
        for (std::size_t idx : order) sorted.push_back(std::move(events[idx]));
        events = std::move(sorted);
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        events[i].t = static_cast<std::int64_t>(i);
    }
    return events;
}

}  // namespace

SplitStream load_stream(const StreamSpec& spec) {
    spec.split_fractions.validate();
    std::vector<Event> events;
    if (!spec.path.empty()) {
        events = read_labeled_csv(spec);
    } else if (spec.synthetic) {
        events = generate_synthetic(*spec.synthetic);
    } else {
        throw std::invalid_argument(
            "StreamSpec needs either a file path or a synthetic config");
    }
    return split_events(std::move(events), spec.split_fractions);
}

Standardizer Standardizer::fit(const std::vector<Event>& train) {
    if (train.empty()) {
        throw std::invalid_argument("standardize: empty training segment");
    }
    const std::size_t d = train.front().features.size();
    Standardizer s;
    s.mean_.assign(d, 0.0);
    s.stddev_.assign(d, 0.0);
    s.constant_.assign(d, false);

    const double n = static_cast<double>(train.size());
    for (const Event& e : train) {
        if (e.features.size() != d) {
            throw std::invalid_argument("standardize: ragged feature dimensions");
        }
        for (std::size_t j = 0; j < d; ++j) s.mean_[j] += e.features[j];
    }
    for (double& m : s.mean_) m /= n;
    for (const Event& e : train) {
        for (std::size_t j = 0; j < d; ++j) {
            const double c = e.features[j] - s.mean_[j];
            s.stddev_[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        s.stddev_[j] = std::sqrt(s.stddev_[j] / n);
        if (s.stddev_[j] <= 0.0) {
            s.constant_[j] = true;
            s.stddev_[j] = 1.0;  // unused; transform emits 0 for flagged dims
        }
    }
    return s;
}

FeatureVector Standardizer::transform(std::span<const double> x) const {
    if (x.size() != mean_.size()) {
        throw std::invalid_argument("standardize: dimension mismatch");
    }
    FeatureVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = constant_[j] ? 0.0 : (x[j] - mean_[j]) / stddev_[j];
    }
    return out;
}

void Standardizer::apply(std::vector<Event>& events) const {
    for (Event& e : events) {
        e.features = transform(e.features);
    }
}

Standardizer standardize(SplitStream& stream) {
    Standardizer s = Standardizer::fit(stream.train);
    s.apply(stream.train);
    s.apply(stream.validation);
    s.apply(stream.test);
    return s;
}

void write_stream_csv(std::ostream& out, const std::vector<Event>& events,
                      std::size_t dimension) {
    out << "t";
    for (std::size_t j = 0; j < dimension; ++j) out << ",f" << j;
    out << ",label\n";
    for (const Event& e : events) {
        out << e.t;
        for (std::size_t j = 0; j < dimension; ++j) {
            out << ',' << format_double(e.features[j]);
        }
        out << ',' << e.label << '\n';
    }
}

}  // namespace driftguard
