#include "driftarb/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "driftarb/errors.hpp"

namespace driftarb {

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write to " + tmp.string());
        out << content;
        if (!out) throw DataError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_value(const std::string& token, std::size_t line_no) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw DataError("csv line " + std::to_string(line_no) + ": cannot parse value `" + token + "`");
    }
    if (consumed != token.size())
        throw DataError("csv line " + std::to_string(line_no) + ": trailing characters in `" + token + "`");
    return v;
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file, header row required");
    line = strip_cr(line);
    bool has_t_column = false;
    if (line == "value") {
        has_t_column = false;
    } else if (line == "t,value") {
        has_t_column = true;
    } else {
        throw DataError(path.string() + " line 1: header must be `value` or `t,value`, got `" + line + "`");
    }

    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        std::string token = line;
        if (has_t_column) {
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw DataError(path.string() + " line " + std::to_string(line_no) + ": expected `t,value`");
            token = line.substr(comma + 1);
        } else if (line.find(',') != std::string::npos) {
            throw DataError(path.string() + " line " + std::to_string(line_no) +
                            ": expected a single `value` column");
        }
        values.push_back(parse_value(token, line_no));
    }
    if (values.empty()) throw DataError(path.string() + ": no data rows");
    return TimeSeries(std::move(values));
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::ostringstream os;
    os << "t,value\n";
    for (std::size_t t = 0; t < series.size(); ++t)
        os << t << ',' << format_number(series[t]) << '\n';
    write_atomic(path, os.str());
}

void write_forecast_csv(const std::filesystem::path& path, const std::vector<double>& combined) {
    std::ostringstream os;
    os << "step,value\n";
    for (std::size_t t = 0; t < combined.size(); ++t)
        os << (t + 1) << ',' << format_number(combined[t]) << '\n';
    write_atomic(path, os.str());
}

void write_decision_json(const std::filesystem::path& path, const PipelineResult& result) {
    using nlohmann::json;
    json doc;
    json models = json::array();
    const EnsembleDecision& d = result.decision;
    for (std::size_t m = 0; m < d.model_names.size(); ++m) {
        models.push_back({{"name", d.model_names[m]},
                          {"predicted_error", d.predicted_errors[m]},
                          {"weight", d.weights[m]},
                          {"forecast", d.individual_forecasts[m]}});
    }
    doc["models"] = std::move(models);
    doc["combined_forecast"] = d.combined;

    json records = json::array();
    for (const auto& rec : result.records) {
        records.push_back({{"slice_index", rec.slice_index},
                           {"adjusted", rec.adjusted},
                           {"p_value", rec.p_value},
                           {"objective", rec.objective},
                           {"features", rec.features.q},
                           {"mapes", rec.errors}});
    }
    doc["slice_records"] = std::move(records);
    doc["bounds"] = {{"residual_bound", result.bounds.residual_bound},
                     {"weight_mean_bound", result.bounds.weight_mean_bound},
                     {"weight_mean_std_bound", result.bounds.weight_mean_std_bound},
                     {"R", result.bounds.r},
                     {"delta", result.bounds.delta}};
    write_atomic(path, doc.dump(2) + "\n");
}

void write_backtest_csv(const std::filesystem::path& path, const BacktestResult& result) {
    std::ostringstream os;
    os << "origin,actual,forecast_adjusted,forecast_plain,mape_adjusted,mape_plain\n";
    for (const auto& row : result.rows) {
        os << row.origin << ',' << format_number(row.actual) << ','
           << format_number(row.forecast_adjusted) << ',' << format_number(row.forecast_plain) << ','
           << format_number(row.mape_adjusted) << ',' << format_number(row.mape_plain) << '\n';
    }
    os << "aggregate,,,," << format_number(result.mean_mape_adjusted) << ','
       << format_number(result.mean_mape_plain) << '\n';
    write_atomic(path, os.str());
}

} // namespace driftarb
