#include "driftarb/arbiter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "driftarb/errors.hpp"
#include "driftarb/logging.hpp"
#include "driftarb/tree.hpp"

namespace driftarb {

namespace {

SolverOptions solver_options(const PipelineConfig& config) {
    SolverOptions opts;
    opts.max_iters = config.solver.max_iters;
    opts.tol = config.solver.tol;
    opts.epsilon = config.epsilon;
    return opts;
}

} // namespace

std::vector<double> softmax_weights(std::span<const double> errors) {
    if (errors.empty()) throw ConfigError("softmax_weights: need at least one error");
    double lo = errors[0];
    for (double e : errors) {
        if (!std::isfinite(e)) throw NumericError("softmax_weights: non-finite error");
        lo = std::min(lo, e);
    }
    std::vector<double> weights(errors.size());
    double total = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        weights[i] = std::exp(-(errors[i] - lo));
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return weights;
}

std::vector<SliceRecord> build_slice_records(const TimeSeries& series, const PipelineConfig& config) {
    config.validate();
    const auto slices = partition_slices(series, config.slice_len, config.slice_count);
    const Slice& newest = slices.back();
    const SolverOptions opts = solver_options(config);

    std::vector<SliceRecord> records;
    records.reserve(slices.size() - 1);
    for (std::size_t j = 0; j + 1 < slices.size(); ++j) {
        const Slice& slice = slices[j];
        if (!slice.next_actual.has_value())
            throw DataError("slice " + std::to_string(slice.index) + " lacks a next observation");
        const double actual = *slice.next_actual;
        if (actual == 0.0) {
            logging::warn("dropping slice " + std::to_string(slice.index) +
                          " from meta-learner training: next observation is exactly 0");
            continue;
        }

        AdjustedSlice adj = adjust_slice(slice, newest, config.p_threshold, config.bound_b, opts);

        SliceRecord rec;
        rec.slice_index = slice.index;
        rec.adjusted = adj.adjustment.adjusted;
        rec.p_value = adj.test.p_value;
        rec.objective = adj.adjustment.objective;
        const std::vector<double>& train_values = config.raw_features ? slice.values : adj.values;
        rec.features = quantile_features(train_values, config.quantile_k);

        rec.errors.reserve(config.forecasters.size());
        for (const auto& kind : config.forecasters) {
            const auto model = FittedForecaster::fit(kind, adj.values);
            const double pred = model.forecast(1)[0];
            double err = mape(pred, actual);
            if (config.fraction_mape) err /= 100.0;
            rec.errors.push_back(err);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

PipelineResult run_pipeline(const TimeSeries& series, const PipelineConfig& config) {
    config.validate();
    PipelineResult result;
    result.records = build_slice_records(series, config);

    const auto slices = partition_slices(series, config.slice_len, config.slice_count);
    const QuantileFeatures newest_features = quantile_features(slices.back().values, config.quantile_k);

    const std::size_t n_models = config.forecasters.size();
    std::vector<std::vector<double>> rows;
    rows.reserve(result.records.size());
    for (const auto& rec : result.records) rows.push_back(rec.features.q);

    EnsembleDecision& decision = result.decision;
    decision.predicted_errors.resize(n_models);
    for (std::size_t m = 0; m < n_models; ++m) {
        decision.model_names.push_back(config.forecasters[m].name());
        std::vector<double> targets;
        targets.reserve(result.records.size());
        for (const auto& rec : result.records) targets.push_back(rec.errors[m]);
        if (rows.size() < 2) {
            if (m == 0)
                logging::warn("fewer than 2 usable slice records; using mean-error predictors");
            double mean = 0.0;
            for (double t : targets) mean += t;
            decision.predicted_errors[m] = targets.empty() ? 0.0 : mean / static_cast<double>(targets.size());
        } else {
            const auto tree =
                RegressionTree::fit(rows, targets, config.tree.max_depth, config.tree.min_leaf);
            decision.predicted_errors[m] = tree.predict(newest_features.q);
        }
    }

    decision.weights = softmax_weights(decision.predicted_errors);

    decision.combined.assign(static_cast<std::size_t>(config.horizon), 0.0);
    for (std::size_t m = 0; m < n_models; ++m) {
        const auto model = FittedForecaster::fit(config.forecasters[m], series.values());
        auto fc = model.forecast(config.horizon);
        for (std::size_t t = 0; t < fc.size(); ++t) decision.combined[t] += decision.weights[m] * fc[t];
        decision.individual_forecasts.push_back(std::move(fc));
    }

    double r = 0.0;
    for (double v : series.values()) r = std::max(r, std::abs(v));
    result.bounds = concentration_bounds(config.bound_b, std::max(r, 1e-300), config.slice_len,
                                         config.bound_delta);
    return result;
}

BacktestResult backtest(const TimeSeries& series, const PipelineConfig& config, int origin_count) {
    config.validate();
    if (origin_count < 1) throw ConfigError("backtest: origin count must be >= 1");
    const std::size_t needed =
        static_cast<std::size_t>(config.slice_len) * static_cast<std::size_t>(config.slice_count);
    if (series.size() < needed + static_cast<std::size_t>(origin_count))
        throw DataError("backtest: series too short for " + std::to_string(origin_count) +
                        " origins; need at least " + std::to_string(needed + origin_count) +
                        " observations, have " + std::to_string(series.size()));

    PipelineConfig adjusted_cfg = config;
    adjusted_cfg.horizon = 1;
    PipelineConfig plain_cfg = adjusted_cfg;
    plain_cfg.p_threshold = 0.0; // gate disabled: NoDrift everywhere

    BacktestResult out;
    double sum_adj = 0.0, sum_plain = 0.0;
    std::size_t counted = 0;
    for (int i = 0; i < origin_count; ++i) {
        const std::size_t target = series.size() - static_cast<std::size_t>(origin_count) +
                                   static_cast<std::size_t>(i);
        const double actual = series[target];
        TimeSeries history(
            std::vector<double>(series.values().begin(), series.values().begin() + target));

        BacktestRow row;
        row.origin = static_cast<int>(target);
        row.actual = actual;
        row.forecast_adjusted = run_pipeline(history, adjusted_cfg).decision.combined[0];
        row.forecast_plain = run_pipeline(history, plain_cfg).decision.combined[0];
        if (actual == 0.0) {
            logging::warn("backtest: skipping origin " + std::to_string(target) +
                          " (actual is exactly 0, MAPE undefined)");
            continue;
        }
        row.mape_adjusted = mape(row.forecast_adjusted, actual);
        row.mape_plain = mape(row.forecast_plain, actual);
        if (config.fraction_mape) {
            row.mape_adjusted /= 100.0;
            row.mape_plain /= 100.0;
        }
        sum_adj += row.mape_adjusted;
        sum_plain += row.mape_plain;
        ++counted;
        out.rows.push_back(row);
    }
    if (counted == 0) throw DataError("backtest: no usable origins (all actuals were 0)");
    out.mean_mape_adjusted = sum_adj / static_cast<double>(counted);
    out.mean_mape_plain = sum_plain / static_cast<double>(counted);
    return out;
}

} // namespace driftarb
