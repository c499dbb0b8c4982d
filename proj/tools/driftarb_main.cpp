#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "driftarb/arbiter.hpp"
#include "driftarb/config.hpp"
#include "driftarb/core.hpp"
#include "driftarb/errors.hpp"
#include "driftarb/io.hpp"

namespace {

using namespace driftarb;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Command-line overrides applied on top of the config file.
struct PipelineOverrides {
    std::optional<int> slice_len, slice_count, quantile_k, horizon;
    std::optional<double> p_threshold, bound_b, epsilon;
    std::optional<std::uint64_t> seed;

    void add_options(CLI::App& cmd) {
        cmd.add_option("--L", slice_len, "Override slice length L");
        cmd.add_option("--n", slice_count, "Override slice count n");
        cmd.add_option("--k", quantile_k, "Override quantile count k");
        cmd.add_option("--p-threshold", p_threshold, "Override the drift-gate p-value threshold");
        cmd.add_option("--B", bound_b, "Override the weight upper bound B");
        cmd.add_option("--epsilon", epsilon, "Override the weight-mean tolerance");
        cmd.add_option("--horizon", horizon, "Override the forecast horizon h");
        cmd.add_option("--seed", seed, "Override the seed");
    }

    PipelineConfig apply(PipelineConfig cfg) const {
        if (slice_len) cfg.slice_len = *slice_len;
        if (slice_count) cfg.slice_count = *slice_count;
        if (quantile_k) cfg.quantile_k = *quantile_k;
        if (horizon) cfg.horizon = *horizon;
        if (p_threshold) cfg.p_threshold = *p_threshold;
        if (bound_b) cfg.bound_b = *bound_b;
        if (epsilon) cfg.epsilon = *epsilon;
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
};

int run_synth(const std::string& config_path, const std::string& out_path) {
    const SynthConfig cfg = parse_synth_config(read_file(config_path));
    write_series_csv(out_path, synthesize(cfg));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_run(const std::string& input, const std::string& config_path, const std::string& outdir,
            const PipelineOverrides& overrides) {
    const PipelineConfig cfg = overrides.apply(parse_pipeline_config(read_file(config_path)));
    const TimeSeries series = read_series_csv(input);
    const PipelineResult result = run_pipeline(series, cfg);

    const std::filesystem::path dir(outdir);
    write_forecast_csv(dir / "forecast.csv", result.decision.combined);
    write_decision_json(dir / "decision.json", result);

    for (std::size_t m = 0; m < result.decision.model_names.size(); ++m) {
        std::cout << result.decision.model_names[m]
                  << ": predicted_error=" << format_number(result.decision.predicted_errors[m])
                  << " weight=" << format_number(result.decision.weights[m]) << "\n";
    }
    std::cout << "wrote " << (dir / "forecast.csv").string() << " and "
              << (dir / "decision.json").string() << "\n";
    return 0;
}

int run_backtest(const std::string& input, const std::string& config_path, int origins,
                 const std::string& outdir, const PipelineOverrides& overrides) {
    const PipelineConfig cfg = overrides.apply(parse_pipeline_config(read_file(config_path)));
    const TimeSeries series = read_series_csv(input);
    const BacktestResult result = backtest(series, cfg, origins);

    const std::filesystem::path dir(outdir);
    write_backtest_csv(dir / "backtest.csv", result);
    std::cout << "mean MAPE drift-adjusted: " << format_number(result.mean_mape_adjusted) << "\n";
    std::cout << "mean MAPE gate-disabled:  " << format_number(result.mean_mape_plain) << "\n";
    std::cout << "wrote " << (dir / "backtest.csv").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"drift-adjusted arbitrated forecasting ensemble"};
    app.require_subcommand(1);

    std::string config_path, input_path, out_path, outdir = ".";
    int origins = 1;
    PipelineOverrides overrides;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic drifted series as CSV");
    synth->add_option("--config", config_path, "JSON config file with a `synth` section")->required();
    synth->add_option("--out", out_path, "Output CSV path")->required();

    auto* run = app.add_subcommand("run", "Run the ensemble pipeline on a CSV series");
    run->add_option("--input", input_path, "Input CSV (header `value` or `t,value`)")->required();
    run->add_option("--config", config_path, "JSON config file with a `pipeline` section")->required();
    run->add_option("--outdir", outdir, "Output directory for forecast.csv and decision.json");
    overrides.add_options(*run);

    auto* bt = app.add_subcommand("backtest", "Rolling-origin comparison with/without drift adjustment");
    bt->add_option("--input", input_path, "Input CSV")->required();
    bt->add_option("--config", config_path, "JSON config file with a `pipeline` section")->required();
    bt->add_option("--origins", origins, "Number of rolling origins")->required();
    bt->add_option("--outdir", outdir, "Output directory for backtest.csv");
    overrides.add_options(*bt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return run_synth(config_path, out_path);
        if (run->parsed()) return run_run(input_path, config_path, outdir, overrides);
        if (bt->parsed()) return run_backtest(input_path, config_path, origins, outdir, overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
