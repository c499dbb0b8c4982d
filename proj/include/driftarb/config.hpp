#ifndef DRIFTARB_CONFIG_HPP
#define DRIFTARB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "driftarb/core.hpp"
#include "driftarb/forecasters.hpp"

namespace driftarb {

struct TreeParams {
    int max_depth = 3;
    int min_leaf = 1;
};

struct SolverParams {
    int max_iters = 5000;
    double tol = 1e-12;
};

struct PipelineConfig {
    int slice_len = 0;          // L
    int slice_count = 0;        // n
    int quantile_k = 4;         // k
    double p_threshold = 0.5;   // paired-test gate; adjust when p < threshold
    double bound_b = 5.0;       // B
    double epsilon = 0.0;       // weight-mean tolerance; 0 = equality constraint
    int horizon = 1;            // h
    std::vector<ForecasterKind> forecasters;
    TreeParams tree;
    SolverParams solver;
    std::uint64_t seed = 0;
    double bound_delta = 0.05;  // delta for the concentration-bound report
    bool raw_features = false;  // ablation: features always from raw values
    bool fraction_mape = false; // MAPE as fraction instead of percent

    void validate() const;

    /// mean, seasonal_naive(1), exp_smoothing(0.3), ar(2).
    static std::vector<ForecasterKind> default_forecasters();
};

/// Parses the `pipeline` section of a JSON config file. Unknown keys are
/// rejected; missing optional keys fall back to the defaults above.
/// Throws ConfigError naming the offending field.
PipelineConfig parse_pipeline_config(const std::string& json_text);

/// Parses the `synth` section. All four fields are required.
SynthConfig parse_synth_config(const std::string& json_text);

} // namespace driftarb

#endif
