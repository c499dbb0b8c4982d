#include <doctest.h>

#include <random>

#include "driftarb/errors.hpp"
#include "driftarb/forecasters.hpp"

using namespace driftarb;

namespace {

ForecasterKind mean_kind() { return {ForecasterKind::Type::Mean}; }

ForecasterKind snaive_kind(int period) {
    ForecasterKind k{ForecasterKind::Type::SeasonalNaive};
    k.period = period;
    return k;
}

ForecasterKind ses_kind(double alpha) {
    ForecasterKind k{ForecasterKind::Type::ExpSmoothing};
    k.smoothing = alpha;
    return k;
}

ForecasterKind ar_kind(int p, double ridge) {
    ForecasterKind k{ForecasterKind::Type::AutoRegressive};
    k.order = p;
    k.ridge = ridge;
    return k;
}

std::vector<ForecasterKind> all_kinds() {
    return {mean_kind(), snaive_kind(2), ses_kind(0.4), ar_kind(1, 0.0)};
}

} // namespace

TEST_CASE("mean forecaster on a constant series") {
    const auto m = FittedForecaster::fit(mean_kind(), std::vector<double>{4, 4, 4});
    CHECK(m.forecast(1)[0] == 4.0);
    CHECK(m.forecast(3) == std::vector<double>{4, 4, 4});
}

TEST_CASE("seasonal naive repeats the stored cycle") {
    const auto m = FittedForecaster::fit(snaive_kind(2), std::vector<double>{1, 9, 1, 9});
    CHECK(m.forecast(1)[0] == 1.0);
    const auto m2 = FittedForecaster::fit(snaive_kind(2), std::vector<double>{1, 9});
    CHECK(m2.forecast(4) == std::vector<double>{1, 9, 1, 9});
}

TEST_CASE("AR(1) recovers an exact geometric recurrence") {
    const std::vector<double> data{1, 2, 4, 8, 16};
    const auto m = FittedForecaster::fit(ar_kind(1, 0.0), data);
    // independent long-double normal-equation solve for rows (1, x_{t-1}) -> x_t
    long double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t t = 1; t < data.size(); ++t) {
        const long double x = data[t - 1], y = data[t];
        s1 += 1;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
    }
    const long double det = s1 * sxx - sx * sx;
    const long double c = (sy * sxx - sx * sxy) / det;
    const long double phi = (s1 * sxy - sx * sy) / det;
    CHECK(m.coefficients()[0] == doctest::Approx(static_cast<double>(c)).epsilon(1e-8));
    CHECK(m.coefficients()[1] == doctest::Approx(static_cast<double>(phi)).epsilon(1e-8));
    CHECK(m.coefficients()[1] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(m.forecast(1)[0] == doctest::Approx(32.0).epsilon(1e-8));
    CHECK(m.forecast(2)[1] == doctest::Approx(64.0).epsilon(1e-6));
}

TEST_CASE("exp smoothing recursion") {
    const std::vector<double> data{10, 12};
    const auto m = FittedForecaster::fit(ses_kind(0.5), data);
    // s0 = 10, s1 = 0.5*12 + 0.5*10 = 11; level fixed across steps
    CHECK(m.forecast(3) == std::vector<double>{11, 11, 11});
}

TEST_CASE("insufficient data errors") {
    CHECK_THROWS_AS(FittedForecaster::fit(snaive_kind(5), std::vector<double>{1, 2}), DataError);
    CHECK_THROWS_AS(FittedForecaster::fit(ar_kind(2, 0.0), std::vector<double>{1, 2, 3}), DataError);
}

TEST_CASE("singular AR fit suggests ridge") {
    // constant series: lag column collinear with the intercept
    const std::vector<double> data{5, 5, 5, 5, 5, 5};
    CHECK_THROWS_AS(FittedForecaster::fit(ar_kind(1, 0.0), data), NumericError);
    const auto m = FittedForecaster::fit(ar_kind(1, 1e-6), data);
    CHECK(m.forecast(1)[0] == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("shift equivariance") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> g(10.0, 2.0);
    std::vector<double> data(40);
    for (double& v : data) v = g(rng);
    for (const auto& kind : all_kinds()) {
        const double base = FittedForecaster::fit(kind, data).forecast(1)[0];
        const double c = 57.25;
        auto shifted = data;
        for (double& v : shifted) v += c;
        const double got = FittedForecaster::fit(kind, shifted).forecast(1)[0];
        CHECK(got == doctest::Approx(base + c).epsilon(1e-8));
    }
}

TEST_CASE("scale equivariance") {
    std::mt19937_64 rng(47);
    std::normal_distribution<double> g(10.0, 2.0);
    std::vector<double> data(40);
    for (double& v : data) v = g(rng);
    for (const auto& kind : all_kinds()) {
        const double base = FittedForecaster::fit(kind, data).forecast(1)[0];
        const double c = 3.5;
        auto scaled = data;
        for (double& v : scaled) v *= c;
        const double got = FittedForecaster::fit(kind, scaled).forecast(1)[0];
        CHECK(got == doctest::Approx(base * c).epsilon(1e-8));
    }
}

TEST_CASE("constant series is a fixed point for every kind") {
    const std::vector<double> data(20, 7.5);
    CHECK(FittedForecaster::fit(mean_kind(), data).forecast(2) == std::vector<double>{7.5, 7.5});
    CHECK(FittedForecaster::fit(snaive_kind(4), data).forecast(2) == std::vector<double>{7.5, 7.5});
    CHECK(FittedForecaster::fit(ses_kind(0.2), data).forecast(1)[0] == 7.5);
    const auto ar = FittedForecaster::fit(ar_kind(2, 1e-6), data);
    CHECK(ar.forecast(1)[0] == doctest::Approx(7.5).epsilon(1e-6));
}

TEST_CASE("fit and forecast are deterministic") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> data(30);
    for (double& v : data) v = g(rng);
    for (const auto& kind : all_kinds()) {
        const auto a = FittedForecaster::fit(kind, data).forecast(5);
        const auto b = FittedForecaster::fit(kind, data).forecast(5);
        CHECK(a == b);
    }
}

TEST_CASE("kind validation") {
    CHECK_THROWS_AS(snaive_kind(0).validate(), ConfigError);
    CHECK_THROWS_AS(ses_kind(0.0).validate(), ConfigError);
    CHECK_THROWS_AS(ses_kind(1.5).validate(), ConfigError);
    CHECK_THROWS_AS(ar_kind(0, 0.0).validate(), ConfigError);
    CHECK_THROWS_AS(ar_kind(1, -1.0).validate(), ConfigError);
    CHECK_NOTHROW(ar_kind(3, 0.0).validate());
}
