#ifndef DRIFTARB_DRIFT_ADJUST_HPP
#define DRIFTARB_DRIFT_ADJUST_HPP

#include <span>
#include <vector>

#include "driftarb/core.hpp"
#include "driftarb/stats.hpp"

namespace driftarb {

struct SolverOptions {
    int max_iters = 5000;
    double tol = 1e-12;      // stop once the squared mean gap falls below this
    double epsilon = 0.0;    // tolerance on |mean(alpha) - 1|; 0 = equality form
    double weight_floor = 1e-6;
};

/// Per-slice weight vector with the constraints it was solved under.
struct DriftAdjustment {
    std::vector<double> alpha;
    double bound_b = 0.0;
    double epsilon = 0.0;
    double objective = 0.0; // squared gap between weighted source mean and target mean
    bool adjusted = false;  // false when the t-test gate said NoDrift and alpha == 1
};

/// Right-hand sides of the concentration bounds on the post-adjustment
/// residual and on the weight mean.
struct BoundReport {
    double residual_bound = 0.0;        // (1 + sqrt(log(2/delta))) * R * sqrt((B^2+1)/n)
    double weight_mean_bound = 0.0;     // B * sqrt(log(2/delta) / (2n))
    double weight_mean_std_bound = 0.0; // B / (2 sqrt(n))
    double r = 0.0;
    double delta = 0.0;
};

/// Minimizes (mean(alpha .* source) - mean(target))^2 over
/// {alpha in [floor, B]^L, |mean(alpha) - 1| <= epsilon} by projected
/// gradient descent from alpha = 1, with exact line search and Euclidean
/// projection via bisection on the mean's shift. The result is never worse
/// than alpha = 1. Requires B > 1 so the start is feasible.
DriftAdjustment solve_reweighting(std::span<const double> source, std::span<const double> target,
                                  double bound_b, const SolverOptions& opts = {});

BoundReport concentration_bounds(double bound_b, double r, int n, double delta);

struct AdjustedSlice {
    std::vector<double> values; // alpha .* slice values, or the slice unchanged
    DriftAdjustment adjustment;
    TTestResult test;
};

/// Gates on paired_t_test(slice, newest): p >= p_threshold leaves the slice
/// unchanged; otherwise the reweighting QP is solved and alpha applied
/// elementwise. A degenerate paired test (constant differences) counts as
/// Drift when the constant is nonzero and NoDrift when it is zero.
AdjustedSlice adjust_slice(const Slice& slice, const Slice& newest, double p_threshold,
                           double bound_b, const SolverOptions& opts = {});

} // namespace driftarb

#endif
