#include "driftarb/config.hpp"

#include <set>

#include <json.hpp>

#include "driftarb/errors.hpp"

namespace driftarb {

namespace {

using nlohmann::json;

json parse_root(const std::string& text) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded()) throw ConfigError("config: not valid JSON");
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    return root;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.contains(it.key()))
            throw ConfigError("config: unknown key `" + where + "." + it.key() + "`");
    }
}

template <typename T>
T require(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError("config: missing required field `" + where + "." + key + "`");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad type for field `" + where + "." + key + "`");
    }
}

template <typename T>
T optional(const json& obj, const std::string& where, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad type for field `" + where + "." + key + "`");
    }
}

ForecasterKind parse_forecaster(const json& spec, const std::string& where) {
    if (!spec.is_object()) throw ConfigError("config: entries of `" + where + "` must be objects");
    const auto type = require<std::string>(spec, where, "type");
    ForecasterKind kind;
    if (type == "mean") {
        kind.type = ForecasterKind::Type::Mean;
        reject_unknown(spec, {"type"}, where);
    } else if (type == "seasonal_naive") {
        kind.type = ForecasterKind::Type::SeasonalNaive;
        kind.period = optional<int>(spec, where, "period", 1);
        reject_unknown(spec, {"type", "period"}, where);
    } else if (type == "exp_smoothing") {
        kind.type = ForecasterKind::Type::ExpSmoothing;
        kind.smoothing = optional<double>(spec, where, "alpha", 0.3);
        reject_unknown(spec, {"type", "alpha"}, where);
    } else if (type == "ar") {
        kind.type = ForecasterKind::Type::AutoRegressive;
        kind.order = optional<int>(spec, where, "p", 1);
        kind.ridge = optional<double>(spec, where, "ridge", 1e-6);
        reject_unknown(spec, {"type", "p", "ridge"}, where);
    } else {
        throw ConfigError("config: unknown forecaster type `" + type + "`");
    }
    kind.validate();
    return kind;
}

} // namespace

void PipelineConfig::validate() const {
    if (slice_len < 2) throw ConfigError("pipeline.L: slice length must be >= 2");
    if (slice_count < 2) throw ConfigError("pipeline.n: slice count must be >= 2");
    if (quantile_k < 1) throw ConfigError("pipeline.k: quantile count must be >= 1");
    if (p_threshold < 0.0 || p_threshold > 1.0)
        throw ConfigError("pipeline.p_threshold: must lie in [0, 1]");
    if (bound_b <= 1.0) throw ConfigError("pipeline.B: must be > 1");
    if (epsilon < 0.0) throw ConfigError("pipeline.epsilon: must be >= 0");
    if (horizon < 1) throw ConfigError("pipeline.horizon: must be >= 1");
    if (forecasters.empty()) throw ConfigError("pipeline.forecasters: at least one forecaster required");
    for (const auto& f : forecasters) f.validate();
    if (tree.max_depth < 0) throw ConfigError("pipeline.tree.max_depth: must be >= 0");
    if (tree.min_leaf < 1) throw ConfigError("pipeline.tree.min_leaf: must be >= 1");
    if (solver.max_iters < 1) throw ConfigError("pipeline.solver.max_iters: must be >= 1");
    if (solver.tol <= 0.0) throw ConfigError("pipeline.solver.tol: must be > 0");
    if (bound_delta <= 0.0 || bound_delta >= 1.0)
        throw ConfigError("pipeline.bound_delta: must lie in (0, 1)");
}

std::vector<ForecasterKind> PipelineConfig::default_forecasters() {
    ForecasterKind mean{ForecasterKind::Type::Mean};
    ForecasterKind naive{ForecasterKind::Type::SeasonalNaive};
    naive.period = 1;
    ForecasterKind ses{ForecasterKind::Type::ExpSmoothing};
    ses.smoothing = 0.3;
    ForecasterKind ar{ForecasterKind::Type::AutoRegressive};
    ar.order = 2;
    ar.ridge = 1e-6;
    return {mean, naive, ses, ar};
}

PipelineConfig parse_pipeline_config(const std::string& json_text) {
    const json root = parse_root(json_text);
    if (!root.contains("pipeline")) throw ConfigError("config: missing `pipeline` section");
    const json& p = root.at("pipeline");
    if (!p.is_object()) throw ConfigError("config: `pipeline` must be an object");
    reject_unknown(p,
                   {"L", "n", "k", "p_threshold", "B", "epsilon", "horizon", "forecasters", "tree",
                    "solver", "seed", "bound_delta", "raw_features", "fraction_mape"},
                   "pipeline");

    PipelineConfig cfg;
    cfg.slice_len = require<int>(p, "pipeline", "L");
    cfg.slice_count = require<int>(p, "pipeline", "n");
    cfg.quantile_k = optional<int>(p, "pipeline", "k", cfg.quantile_k);
    cfg.p_threshold = optional<double>(p, "pipeline", "p_threshold", cfg.p_threshold);
    cfg.bound_b = optional<double>(p, "pipeline", "B", cfg.bound_b);
    cfg.epsilon = optional<double>(p, "pipeline", "epsilon", cfg.epsilon);
    cfg.horizon = optional<int>(p, "pipeline", "horizon", cfg.horizon);
    cfg.seed = optional<std::uint64_t>(p, "pipeline", "seed", cfg.seed);
    cfg.bound_delta = optional<double>(p, "pipeline", "bound_delta", cfg.bound_delta);
    cfg.raw_features = optional<bool>(p, "pipeline", "raw_features", cfg.raw_features);
    cfg.fraction_mape = optional<bool>(p, "pipeline", "fraction_mape", cfg.fraction_mape);

    if (p.contains("forecasters")) {
        const json& arr = p.at("forecasters");
        if (!arr.is_array()) throw ConfigError("config: `pipeline.forecasters` must be an array");
        for (const auto& entry : arr) cfg.forecasters.push_back(parse_forecaster(entry, "pipeline.forecasters"));
    } else {
        cfg.forecasters = PipelineConfig::default_forecasters();
    }
    if (p.contains("tree")) {
        const json& t = p.at("tree");
        reject_unknown(t, {"max_depth", "min_leaf"}, "pipeline.tree");
        cfg.tree.max_depth = optional<int>(t, "pipeline.tree", "max_depth", cfg.tree.max_depth);
        cfg.tree.min_leaf = optional<int>(t, "pipeline.tree", "min_leaf", cfg.tree.min_leaf);
    }
    if (p.contains("solver")) {
        const json& s = p.at("solver");
        reject_unknown(s, {"max_iters", "tol"}, "pipeline.solver");
        cfg.solver.max_iters = optional<int>(s, "pipeline.solver", "max_iters", cfg.solver.max_iters);
        cfg.solver.tol = optional<double>(s, "pipeline.solver", "tol", cfg.solver.tol);
    }
    cfg.validate();
    return cfg;
}

SynthConfig parse_synth_config(const std::string& json_text) {
    const json root = parse_root(json_text);
    if (!root.contains("synth")) throw ConfigError("config: missing `synth` section");
    const json& s = root.at("synth");
    if (!s.is_object()) throw ConfigError("config: `synth` must be an object");
    reject_unknown(s, {"segment_means", "segment_length", "noise_std", "seed"}, "synth");

    SynthConfig cfg;
    cfg.segment_means = require<std::vector<double>>(s, "synth", "segment_means");
    cfg.segment_length = require<int>(s, "synth", "segment_length");
    cfg.noise_std = require<double>(s, "synth", "noise_std");
    cfg.seed = require<std::uint64_t>(s, "synth", "seed");
    if (cfg.segment_means.empty()) throw ConfigError("config: `synth.segment_means` must be non-empty");
    if (cfg.segment_length <= 0) throw ConfigError("config: `synth.segment_length` must be > 0");
    if (cfg.noise_std < 0.0) throw ConfigError("config: `synth.noise_std` must be >= 0");
    return cfg;
}

} // namespace driftarb
