#ifndef DRIFTARB_ARBITER_HPP
#define DRIFTARB_ARBITER_HPP

#include <span>
#include <string>
#include <vector>

#include "driftarb/config.hpp"
#include "driftarb/core.hpp"
#include "driftarb/drift_adjust.hpp"

namespace driftarb {

/// One meta-learner training row: slice features (from adjusted values when
/// adjustment occurred) paired with every base model's one-point-forecast
/// MAPE on that slice.
struct SliceRecord {
    int slice_index = 0;
    QuantileFeatures features;
    std::vector<double> errors; // aligned with PipelineConfig::forecasters
    bool adjusted = false;
    double p_value = 1.0;
    double objective = 0.0;
};

struct EnsembleDecision {
    std::vector<std::string> model_names;
    std::vector<double> predicted_errors; // e~_k
    std::vector<double> weights;          // softmax(-e~), sums to 1
    std::vector<std::vector<double>> individual_forecasts;
    std::vector<double> combined;
};

struct PipelineResult {
    EnsembleDecision decision;
    std::vector<SliceRecord> records;
    BoundReport bounds;
};

struct BacktestRow {
    int origin = 0; // index of the held-out observation in the input series
    double actual = 0.0;
    double forecast_adjusted = 0.0;
    double forecast_plain = 0.0;
    double mape_adjusted = 0.0;
    double mape_plain = 0.0;
};

struct BacktestResult {
    std::vector<BacktestRow> rows;
    double mean_mape_adjusted = 0.0;
    double mean_mape_plain = 0.0;
};

/// exp(-e_k) / sum_i exp(-e_i), computed with the minimum error subtracted
/// before exponentiation so huge errors cannot overflow.
std::vector<double> softmax_weights(std::span<const double> errors);

/// Slices the series, gates and adjusts each of slices 1..n-1 against slice
/// n, and records per-forecaster one-step MAPEs against the original next
/// observation. Slices whose next observation is exactly 0 are dropped with
/// a warning.
std::vector<SliceRecord> build_slice_records(const TimeSeries& series, const PipelineConfig& config);

/// Full arbitration: per-forecaster regression trees on the slice records,
/// predicted errors at the newest slice, softmax weights, final models
/// fitted on the full original series, combined h-step forecast.
PipelineResult run_pipeline(const TimeSeries& series, const PipelineConfig& config);

/// Rolling-origin comparison of the configured pipeline against the same
/// pipeline with the drift gate disabled (p_threshold = 0).
BacktestResult backtest(const TimeSeries& series, const PipelineConfig& config, int origin_count);

} // namespace driftarb

#endif
