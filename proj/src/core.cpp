#include "driftarb/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "driftarb/errors.hpp"

namespace driftarb {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DataError("time series must contain at least one observation");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw DataError("non-finite observation at index " + std::to_string(i));
    }
}

std::vector<Slice> partition_slices(const TimeSeries& series, int slice_len, int slice_count,
                                    std::optional<double> held_out) {
    if (slice_len <= 0 || slice_count <= 0)
        throw ConfigError("slice length and slice count must be positive");
    const std::size_t needed = static_cast<std::size_t>(slice_len) * static_cast<std::size_t>(slice_count);
    if (series.size() < needed) {
        throw DataError("series too short for slicing: have " + std::to_string(series.size()) +
                        " observations, need at least " + std::to_string(needed) + " (" +
                        std::to_string(slice_count) + " slices of length " + std::to_string(slice_len) + ")");
    }
    const std::size_t start = series.size() - needed;
    std::vector<Slice> slices;
    slices.reserve(static_cast<std::size_t>(slice_count));
    for (int j = 0; j < slice_count; ++j) {
        Slice s;
        s.index = j + 1;
        const std::size_t begin = start + static_cast<std::size_t>(j) * slice_len;
        s.values.assign(series.values().begin() + begin, series.values().begin() + begin + slice_len);
        if (j + 1 < slice_count) {
            s.next_actual = series[begin + slice_len];
        } else {
            s.next_actual = held_out;
        }
        slices.push_back(std::move(s));
    }
    return slices;
}

QuantileFeatures quantile_features(std::span<const double> values, int k) {
    if (values.size() < 2) throw DataError("quantile features require at least two values");
    if (k < 1) throw ConfigError("quantile count k must be >= 1");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();

    QuantileFeatures out;
    out.k = k;
    out.q.reserve(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        const double pos = static_cast<double>(m - 1) * static_cast<double>(j) / static_cast<double>(k);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, m - 1);
        const double frac = pos - static_cast<double>(lo);
        out.q.push_back(sorted[lo] + frac * (sorted[hi] - sorted[lo]));
    }
    // interpolation can't escape [min, max], but pin the endpoints exactly
    out.q.front() = sorted.front();
    out.q.back() = sorted.back();
    return out;
}

double mape(double predicted, double actual) {
    if (actual == 0.0) throw NumericError("MAPE undefined for actual == 0");
    return 100.0 * std::abs(predicted - actual) / std::abs(actual);
}

TimeSeries synthesize(const SynthConfig& config) {
    if (config.segment_means.empty()) throw ConfigError("synth: at least one segment mean required");
    if (config.segment_length <= 0) throw ConfigError("synth: segment_length must be positive");
    if (config.noise_std < 0.0) throw ConfigError("synth: noise_std must be >= 0");

    std::vector<double> values;
    values.reserve(config.segment_means.size() * static_cast<std::size_t>(config.segment_length));
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> noise(0.0, config.noise_std > 0.0 ? config.noise_std : 1.0);
    for (double mean : config.segment_means) {
        for (int i = 0; i < config.segment_length; ++i) {
            double v = mean;
            if (config.noise_std > 0.0) v += noise(rng);
            values.push_back(v);
        }
    }
    return TimeSeries(std::move(values));
}

} // namespace driftarb
