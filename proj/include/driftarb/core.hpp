#ifndef DRIFTARB_CORE_HPP
#define DRIFTARB_CORE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace driftarb {

/// Ordered real-valued observations. Values are validated once at
/// construction (finite, non-empty) and immutable afterwards. Timestamps,
/// when the source CSV carries them, are informational only; every
/// computation is index-based.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// One of n non-overlapping length-L windows taken from the end of a
/// series. index is 1-based; slice n is the newest and its last element is
/// the parent series' last element. next_actual is the observation that
/// immediately follows the slice, absent when the slice abuts the end.
struct Slice {
    int index = 0;
    std::vector<double> values;
    std::optional<double> next_actual;
};

/// Quantile embedding of a slice: q[j] is the (j/k)-quantile, j = 0..k,
/// so q[0] is the minimum and q[k] the maximum.
struct QuantileFeatures {
    int k = 0;
    std::vector<double> q;
};

/// Piecewise-constant segment means plus i.i.d. Gaussian noise.
struct SynthConfig {
    std::vector<double> segment_means;
    int segment_length = 0;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
};

/// Partitions the last slice_count*slice_len observations into contiguous
/// slices ordered oldest to newest. Earlier observations are excluded from
/// slicing. held_out, when given, becomes the newest slice's next_actual.
/// Throws DataError when the series is too short.
std::vector<Slice> partition_slices(const TimeSeries& series, int slice_len, int slice_count,
                                    std::optional<double> held_out = std::nullopt);

/// k+1 linear-interpolation quantiles at probabilities j/k. Quantile at
/// probability p sits at sorted position (m-1)*p over m values.
QuantileFeatures quantile_features(std::span<const double> values, int k);

/// 100 * |predicted - actual| / |actual|. Throws NumericError when
/// actual == 0; callers decide whether to skip or substitute.
double mape(double predicted, double actual);

/// Deterministic per seed: segment s holds segment_means[s] plus
/// Gaussian(0, noise_std) noise.
TimeSeries synthesize(const SynthConfig& config);

} // namespace driftarb

#endif
