#ifndef DRIFTARB_STATS_HPP
#define DRIFTARB_STATS_HPP

#include <span>

namespace driftarb {

enum class DriftDecision { NoDrift, Drift };

struct TTestResult {
    double t_stat = 0.0;
    int dof = 0;
    double p_value = 1.0; // two-sided

    /// NoDrift iff p_value >= threshold.
    DriftDecision decide(double threshold) const {
        return p_value >= threshold ? DriftDecision::NoDrift : DriftDecision::Drift;
    }
};

/// Student-t CDF via the regularized incomplete beta function.
/// Absolute error <= 1e-9 over the real line.
double t_cdf(double x, int dof);

/// T = sqrt(m-1) * (mean - mu0) / sigma_ml, with sigma_ml the
/// divide-by-m standard deviation; equals the classical one-sample
/// statistic. p-value is two-sided against t with m-1 dof.
/// Throws NumericError on a constant sample.
TTestResult one_sample_t_test(std::span<const double> sample, double mu0);

/// One-sample test on elementwise differences x - y against mean zero.
/// Throws NumericError when the differences are all identical.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

} // namespace driftarb

#endif
