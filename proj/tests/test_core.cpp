#include <doctest.h>

#include <numeric>
#include <random>

#include "driftarb/core.hpp"
#include "driftarb/errors.hpp"
#include "test_support.hpp"

using namespace driftarb;

namespace {

TimeSeries iota_series(int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1.0);
    return TimeSeries(std::move(v));
}

} // namespace

TEST_CASE("partition_slices basic layout") {
    const auto slices = partition_slices(iota_series(10), 2, 3);
    REQUIRE(slices.size() == 3);
    CHECK(slices[0].values == std::vector<double>{5, 6});
    CHECK(slices[1].values == std::vector<double>{7, 8});
    CHECK(slices[2].values == std::vector<double>{9, 10});
    CHECK(slices[0].next_actual == 7.0);
    CHECK(slices[1].next_actual == 9.0);
    CHECK_FALSE(slices[2].next_actual.has_value());
    CHECK(slices[0].index == 1);
    CHECK(slices[2].index == 3);
}

TEST_CASE("partition_slices exact cover") {
    const auto slices = partition_slices(iota_series(6), 2, 3);
    CHECK(slices[0].values == std::vector<double>{1, 2});
    CHECK(slices[2].values == std::vector<double>{5, 6});
}

TEST_CASE("partition_slices rejects short series") {
    CHECK_THROWS_AS(partition_slices(iota_series(5), 2, 3), DataError);
    try {
        partition_slices(iota_series(5), 2, 3);
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("6") != std::string::npos);
    }
}

TEST_CASE("partition_slices held-out value becomes newest next_actual") {
    const auto slices = partition_slices(iota_series(6), 2, 3, 42.0);
    CHECK(slices[2].next_actual == 42.0);
}

TEST_CASE("slicing round-trip covers the series tail") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int rep = 0; rep < 20; ++rep) {
        const int L = 2 + static_cast<int>(rng() % 6);
        const int n = 1 + static_cast<int>(rng() % 5);
        const int extra = static_cast<int>(rng() % 4);
        std::vector<double> v(static_cast<std::size_t>(L * n + extra));
        for (double& x : v) x = u(rng);
        const TimeSeries series(v);
        const auto slices = partition_slices(series, L, n);
        std::vector<double> rebuilt;
        for (const auto& s : slices) rebuilt.insert(rebuilt.end(), s.values.begin(), s.values.end());
        CHECK(std::equal(rebuilt.begin(), rebuilt.end(), v.end() - L * n));
        CHECK(slices.back().values.back() == v.back());
    }
}

TEST_CASE("quantile_features on a constant slice") {
    const auto qf = quantile_features(std::vector<double>{5, 5, 5, 5}, 4);
    CHECK(qf.q == std::vector<double>{5, 5, 5, 5, 5});
}

TEST_CASE("quantile_features median of odd-length run") {
    const auto qf = quantile_features(std::vector<double>{1, 2, 3, 4, 5}, 2);
    CHECK(qf.q == std::vector<double>{1, 3, 5});
}

TEST_CASE("quantile_features matches the sort-and-interpolate oracle") {
    const std::vector<double> slice{2, 7, 1, 9, 4, 6};
    const auto qf = quantile_features(slice, 3);
    const auto expected = testsupport::quantile_oracle(slice, 3);
    REQUIRE(qf.q.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(qf.q[i] == doctest::Approx(expected[i]).epsilon(1e-12));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> vals(2 + rng() % 20);
        for (double& x : vals) x = u(rng);
        const int k = 1 + static_cast<int>(rng() % 8);
        const auto got = quantile_features(vals, k);
        const auto want = testsupport::quantile_oracle(vals, k);
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(got.q[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("quantile monotonicity and shift equivariance") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> vals(3 + rng() % 15);
        for (double& x : vals) x = u(rng);
        const int k = 1 + static_cast<int>(rng() % 6);
        const auto qf = quantile_features(vals, k);
        REQUIRE(qf.q.size() == static_cast<std::size_t>(k) + 1);
        CHECK(qf.q.front() == *std::min_element(vals.begin(), vals.end()));
        CHECK(qf.q.back() == *std::max_element(vals.begin(), vals.end()));
        for (std::size_t i = 1; i < qf.q.size(); ++i) CHECK(qf.q[i] >= qf.q[i - 1]);

        const double c = u(rng);
        auto shifted = vals;
        for (double& x : shifted) x += c;
        const auto qf2 = quantile_features(shifted, k);
        for (std::size_t i = 0; i < qf.q.size(); ++i)
            CHECK(qf2.q[i] == doctest::Approx(qf.q[i] + c).epsilon(1e-12));
    }
}

TEST_CASE("mape examples and properties") {
    CHECK(mape(10, 10) == 0.0);
    CHECK(mape(9, 10) == doctest::Approx(10.0));
    CHECK(mape(12, 10) == doctest::Approx(20.0));
    CHECK_THROWS_AS(mape(1, 0), NumericError);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int rep = 0; rep < 100; ++rep) {
        const double p = u(rng);
        double a = u(rng);
        if (a == 0.0) a = 1.0;
        const double m = mape(p, a);
        CHECK(m >= 0.0);
        CHECK((m == 0.0) == (p == a));
        CHECK(mape(-p, -a) == doctest::Approx(m));
    }
}

TEST_CASE("synthesize with zero noise is piecewise constant") {
    SynthConfig cfg;
    cfg.segment_means = {0, 10};
    cfg.segment_length = 3;
    cfg.noise_std = 0.0;
    cfg.seed = 1;
    const auto s = synthesize(cfg);
    CHECK(s.values() == std::vector<double>{0, 0, 0, 10, 10, 10});
}

TEST_CASE("synthesize is a pure function of its config") {
    SynthConfig cfg;
    cfg.segment_means = {1, 2, 3};
    cfg.segment_length = 50;
    cfg.noise_std = 0.7;
    cfg.seed = 12345;
    const auto a = synthesize(cfg);
    const auto b = synthesize(cfg);
    CHECK(a.values() == b.values());

    cfg.seed = 12346;
    const auto c = synthesize(cfg);
    CHECK(a.values() != c.values());
}

TEST_CASE("synthesize segment sample means obey the law of large numbers") {
    SynthConfig cfg;
    cfg.segment_means = {0, 10};
    cfg.segment_length = 1000;
    cfg.noise_std = 1.0;
    cfg.seed = 99;
    const auto s = synthesize(cfg);
    REQUIRE(s.size() == 2000);
    double m0 = 0.0, m1 = 0.0;
    for (int i = 0; i < 1000; ++i) {
        m0 += s[static_cast<std::size_t>(i)];
        m1 += s[static_cast<std::size_t>(i) + 1000];
    }
    m0 /= 1000.0;
    m1 /= 1000.0;
    CHECK(std::abs(m0 - 0.0) < 0.2);  // 6 sigma / sqrt(n) rounded up
    CHECK(std::abs(m1 - 10.0) < 0.2);
}

TEST_CASE("TimeSeries rejects empty and non-finite input") {
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), DataError);
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{1.0, std::nan("")}), DataError);
}
