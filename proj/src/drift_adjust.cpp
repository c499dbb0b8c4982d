#include "driftarb/drift_adjust.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "driftarb/errors.hpp"

namespace driftarb {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double weighted_mean(std::span<const double> alpha, std::span<const double> source) {
    double s = 0.0;
    for (std::size_t j = 0; j < source.size(); ++j) s += alpha[j] * source[j];
    return s / static_cast<double>(source.size());
}

// Euclidean projection onto {alpha in [floor, B]^L, |mean(alpha) - 1| <= eps}.
// The box clamp of (raw - nu) has mean non-increasing and continuous in nu,
// so the mean constraint is met by bisection on nu.
void project_feasible(std::vector<double>& raw, double floor, double bound_b, double eps) {
    const std::size_t n = raw.size();
    auto shifted_mean = [&](double nu) {
        double s = 0.0;
        for (double v : raw) s += std::clamp(v - nu, floor, bound_b);
        return s / static_cast<double>(n);
    };

    const double boxed = shifted_mean(0.0);
    double target;
    if (boxed > 1.0 + eps) {
        target = 1.0 + eps;
    } else if (boxed < 1.0 - eps) {
        target = 1.0 - eps;
    } else {
        for (double& v : raw) v = std::clamp(v, floor, bound_b);
        return;
    }

    double lo = *std::min_element(raw.begin(), raw.end()) - bound_b; // mean == B
    double hi = *std::max_element(raw.begin(), raw.end()) - floor;   // mean == floor
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double m = shifted_mean(mid);
        if (std::abs(m - target) <= 1e-15) {
            lo = hi = mid;
            break;
        }
        if (m > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double nu = 0.5 * (lo + hi);
    for (double& v : raw) v = std::clamp(v - nu, floor, bound_b);
}

} // namespace

DriftAdjustment solve_reweighting(std::span<const double> source, std::span<const double> target,
                                  double bound_b, const SolverOptions& opts) {
    const std::size_t len = source.size();
    if (len == 0 || target.size() != len)
        throw DataError("solve_reweighting: source and target must have the same nonzero length");
    for (double v : source)
        if (!std::isfinite(v)) throw DataError("solve_reweighting: non-finite source value");
    for (double v : target)
        if (!std::isfinite(v)) throw DataError("solve_reweighting: non-finite target value");
    if (bound_b <= 1.0)
        throw ConfigError("solve_reweighting: B must be > 1 so alpha = 1 is feasible (got " +
                          std::to_string(bound_b) + ")");
    if (opts.weight_floor <= 0.0 || opts.weight_floor >= 1.0)
        throw ConfigError("solve_reweighting: weight floor must lie in (0, 1)");
    if (opts.epsilon < 0.0) throw ConfigError("solve_reweighting: epsilon must be >= 0");

    const double floor = opts.weight_floor;
    const double eps = opts.epsilon;
    const double target_mean = mean_of(target);

    DriftAdjustment out;
    out.bound_b = bound_b;
    out.epsilon = eps;
    out.adjusted = true;
    out.alpha.assign(len, 1.0);

    const auto [mn, mx] = std::minmax_element(source.begin(), source.end());
    if (*mn == *mx) {
        // constant source: the weighted mean is (near-)invariant on the
        // feasible set, so alpha = 1 already attains the optimum
        const double gap = *mn - target_mean;
        out.objective = gap * gap;
        return out;
    }

    double norm2 = 0.0, src_mean = 0.0;
    for (double v : source) {
        norm2 += v * v;
        src_mean += v;
    }
    src_mean /= static_cast<double>(len);
    double centered2 = 0.0;
    for (double v : source) centered2 += (v - src_mean) * (v - src_mean);

    const double dlen = static_cast<double>(len);
    double gap = weighted_mean(out.alpha, source) - target_mean;
    double f = gap * gap;
    std::vector<double> trial(len);

    for (int iter = 0; iter < opts.max_iters && f > opts.tol; ++iter) {
        // gradient projected onto the mean(alpha)=1 plane, exact line search
        const double coef = gap * dlen / centered2;
        for (std::size_t j = 0; j < len; ++j) trial[j] = out.alpha[j] - coef * (source[j] - src_mean);
        project_feasible(trial, floor, bound_b, eps);
        double trial_gap = weighted_mean(trial, source) - target_mean;
        double trial_f = trial_gap * trial_gap;

        if (trial_f > f) {
            // fall back to the plain gradient step (1/L step, guaranteed descent)
            const double c2 = gap * dlen / norm2;
            for (std::size_t j = 0; j < len; ++j) trial[j] = out.alpha[j] - c2 * source[j];
            project_feasible(trial, floor, bound_b, eps);
            trial_gap = weighted_mean(trial, source) - target_mean;
            trial_f = trial_gap * trial_gap;
        }

        assert(trial_f <= f + 1e-12 * (1.0 + f)); // per-iteration monotonicity
        const double improvement = f - trial_f;
        out.alpha.swap(trial);
        gap = trial_gap;
        f = trial_f;
        if (improvement <= 1e-18 * std::max(1.0, f)) break; // stalled at the constrained optimum
    }

    out.objective = f;
    return out;
}

BoundReport concentration_bounds(double bound_b, double r, int n, double delta) {
    if (delta <= 0.0 || delta >= 1.0)
        throw ConfigError("concentration_bounds: delta must lie in (0, 1)");
    if (n < 1) throw ConfigError("concentration_bounds: n must be >= 1");
    if (bound_b <= 0.0 || r <= 0.0) throw ConfigError("concentration_bounds: B and R must be > 0");

    BoundReport rep;
    rep.r = r;
    rep.delta = delta;
    const double log_term = std::log(2.0 / delta);
    const double dn = static_cast<double>(n);
    rep.residual_bound = (1.0 + std::sqrt(log_term)) * r * std::sqrt((bound_b * bound_b + 1.0) / dn);
    rep.weight_mean_bound = bound_b * std::sqrt(log_term / (2.0 * dn));
    rep.weight_mean_std_bound = bound_b / (2.0 * std::sqrt(dn));
    return rep;
}

AdjustedSlice adjust_slice(const Slice& slice, const Slice& newest, double p_threshold,
                           double bound_b, const SolverOptions& opts) {
    if (slice.values.size() != newest.values.size())
        throw DataError("adjust_slice: slices must have equal length");
    const std::size_t len = slice.values.size();

    AdjustedSlice out;

    // degenerate paired test: constant differences
    bool constant_diff = true;
    const double d0 = slice.values[0] - newest.values[0];
    for (std::size_t i = 1; i < len && constant_diff; ++i)
        constant_diff = (slice.values[i] - newest.values[i]) == d0;
    if (constant_diff) {
        out.test.dof = static_cast<int>(len) - 1;
        out.test.t_stat = 0.0;
        out.test.p_value = (d0 == 0.0) ? 1.0 : 0.0;
    } else {
        out.test = paired_t_test(slice.values, newest.values);
    }

    if (out.test.decide(p_threshold) == DriftDecision::NoDrift) {
        out.values = slice.values;
        out.adjustment.alpha.assign(len, 1.0);
        out.adjustment.bound_b = bound_b;
        out.adjustment.epsilon = opts.epsilon;
        const double gap = mean_of(slice.values) - mean_of(newest.values);
        out.adjustment.objective = gap * gap;
        out.adjustment.adjusted = false;
        return out;
    }

    out.adjustment = solve_reweighting(slice.values, newest.values, bound_b, opts);
    out.values.resize(len);
    for (std::size_t j = 0; j < len; ++j) out.values[j] = out.adjustment.alpha[j] * slice.values[j];
    return out;
}

} // namespace driftarb
