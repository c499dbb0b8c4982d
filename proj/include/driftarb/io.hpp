#ifndef DRIFTARB_IO_HPP
#define DRIFTARB_IO_HPP

#include <filesystem>
#include <string>

#include "driftarb/arbiter.hpp"
#include "driftarb/core.hpp"

namespace driftarb {

/// 12 significant digits, the project-wide emission format.
std::string format_number(double v);

/// CSV contract: header required; either a single `value` column or
/// `t,value` with `t` ignored. Throws DataError with line numbers.
TimeSeries read_series_csv(const std::filesystem::path& path);

/// Writes `t,value` rows 0..len-1. Atomic (temp file + rename).
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

/// Writes `step,value` for the combined forecast, steps 1..h.
void write_forecast_csv(const std::filesystem::path& path, const std::vector<double>& combined);

/// Per-model predicted errors and weights, per-slice records, and the
/// concentration-bound report; schema in docs/decision.schema.json.
void write_decision_json(const std::filesystem::path& path, const PipelineResult& result);

/// origin,actual,forecast_adjusted,forecast_plain,mape_adjusted,mape_plain
/// plus a final aggregate row.
void write_backtest_csv(const std::filesystem::path& path, const BacktestResult& result);

} // namespace driftarb

#endif
