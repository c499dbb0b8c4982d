#include "driftarb/stats.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "driftarb/errors.hpp"

namespace driftarb {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

} // namespace

double t_cdf(double x, int dof) {
    if (dof < 1) throw ConfigError("t_cdf: degrees of freedom must be >= 1");
    if (x == 0.0) return 0.5;
    const double nu = static_cast<double>(dof);
    const double z = nu / (nu + x * x);
    const double tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, z); // P(T > |x|)
    return x > 0.0 ? 1.0 - tail : tail;
}

TTestResult one_sample_t_test(std::span<const double> sample, double mu0) {
    const std::size_t m = sample.size();
    if (m < 2) throw DataError("t-test requires at least two observations");
    double mean = 0.0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    const double sigma_ml = std::sqrt(ss / static_cast<double>(m));
    if (sigma_ml == 0.0) throw NumericError("t-test undefined for a constant sample");

    TTestResult r;
    r.dof = static_cast<int>(m) - 1;
    r.t_stat = std::sqrt(static_cast<double>(m - 1)) * (mean - mu0) / sigma_ml;
    r.p_value = 2.0 * (1.0 - t_cdf(std::abs(r.t_stat), r.dof));
    if (r.p_value > 1.0) r.p_value = 1.0;
    if (r.p_value < 0.0) r.p_value = 0.0;
    return r;
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DataError("paired t-test: length mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return one_sample_t_test(z, 0.0);
}

} // namespace driftarb
