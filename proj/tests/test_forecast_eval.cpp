#include "cycleprobe/error.hpp"
#include "cycleprobe/forecast_eval.hpp"
#include "cycleprobe/summary_stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace cycleprobe;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("metrics on a worked example") {
    const std::vector<double> actual{1.0, 0.0, 1.0, 1.0};
    const std::vector<double> forecast{0.8, 0.3, 0.4, 1.0};
    // errors 0.2, -0.3, 0.6, 0
    CHECK(rmse(actual, forecast) == doctest::Approx(std::sqrt((0.04 + 0.09 + 0.36) / 4.0)));
    CHECK(mae(actual, forecast) == doctest::Approx(1.1 / 4.0));
    const MapeResult m = mape(actual, forecast);
    CHECK(m.skipped_zero_actual == 1);
    CHECK(m.percent == doctest::Approx(100.0 * (0.2 + 0.6 + 0.0) / 3.0));

    const EvaluationReport r = evaluate_forecast(actual, forecast);
    CHECK(r.rmse == rmse(actual, forecast));
    CHECK(r.mae == mae(actual, forecast));
    CHECK(r.mape == m.percent);
    CHECK(r.n_evaluated == 3);
    CHECK(r.n_skipped_zero_actual == 1);
    CHECK(kMapeConvention == "skip-zero-actual");
}

TEST_CASE("two-quarter hand case") {
    const std::vector<double> actual{1.0, 0.0};
    const std::vector<double> half{0.5, 0.5};
    CHECK(rmse(actual, half) == 0.5);
    CHECK(mae(actual, half) == 0.5);
    CHECK(mape(actual, half).percent == 50.0);
    CHECK(mape(actual, half).skipped_zero_actual == 1);
}

TEST_CASE("perfect forecast scores zero") {
    const std::vector<double> v{1.0, 2.5, -3.0};
    CHECK(rmse(v, v) == 0.0);
    CHECK(mae(v, v) == 0.0);
    CHECK(mape(v, v).percent == 0.0);
}

TEST_CASE("metric errors") {
    const std::vector<double> a{1.0, 2.0};
    const std::vector<double> b{1.0};
    const std::vector<double> none;
    CHECK(code_of([&] { rmse(a, b); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { mae(a, b); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { mape(a, b); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { rmse(none, none); }) == ErrorCode::EmptyInput);
    CHECK(code_of([&] { mae(none, none); }) == ErrorCode::EmptyInput);
    CHECK(code_of([&] { mape(none, none); }) == ErrorCode::EmptyInput);
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(code_of([&] { mape(zeros, a); }) == ErrorCode::AllActualsZero);
    CHECK(code_of([&] { evaluate_forecast(zeros, a); }) == ErrorCode::AllActualsZero);
}

TEST_CASE("metric properties on random vectors") {
    std::mt19937_64 rng(314159);
    std::normal_distribution<double> z;
    std::uniform_int_distribution<int> len(1, 80);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = len(rng);
        std::vector<double> a(static_cast<std::size_t>(n)), f(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = z(rng) + 0.1;
            f[i] = z(rng);
        }
        const double r = rmse(a, f);
        const double m = mae(a, f);
        CHECK(r >= m - 1e-15);
        CHECK(r <= std::sqrt(static_cast<double>(n)) * m + 1e-12);
        CHECK(r == doctest::Approx(rmse(f, a)).epsilon(1e-14));
        CHECK(m == doctest::Approx(mae(f, a)).epsilon(1e-14));

        std::vector<std::size_t> order(a.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<double> pa, pf;
        for (std::size_t i : order) {
            pa.push_back(a[i]);
            pf.push_back(f[i]);
        }
        CHECK(rmse(pa, pf) == doctest::Approx(r).epsilon(1e-12));
        CHECK(mae(pa, pf) == doctest::Approx(m).epsilon(1e-12));
        CHECK(mape(pa, pf).percent == doctest::Approx(mape(a, f).percent).epsilon(1e-12));
    }
}

TEST_CASE("mape depends on which side is the actual") {
    const std::vector<double> a{2.0};
    const std::vector<double> f{1.0};
    CHECK(mape(a, f).percent == doctest::Approx(50.0));
    CHECK(mape(f, a).percent == doctest::Approx(100.0));
}

TEST_CASE("summary statistics") {
    const std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    const SummaryStatistics s = summarize(v);
    CHECK(s.observations == 8);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.median == doctest::Approx(4.5));
    CHECK(s.maximum == 9.0);
    CHECK(s.minimum == 2.0);
    CHECK(s.std_dev == doctest::Approx(std::sqrt(32.0 / 7.0)));
    // population moments: m2 = 4, m3 = 5.25, m4 = 44.5
    REQUIRE(s.skewness.has_value());
    REQUIRE(s.kurtosis.has_value());
    CHECK(*s.skewness == doctest::Approx(5.25 / 8.0));
    CHECK(*s.kurtosis == doctest::Approx(44.5 / 16.0));

    const std::vector<double> odd{3.0, 1.0, 2.0};
    CHECK(summarize(odd).median == 2.0);

    const std::vector<double> flat{1.5, 1.5, 1.5};
    const SummaryStatistics c = summarize(flat);
    CHECK(c.std_dev == 0.0);
    CHECK_FALSE(c.skewness.has_value());
    CHECK_FALSE(c.kurtosis.has_value());

    const std::vector<double> none;
    CHECK(code_of([&] { summarize(none); }) == ErrorCode::EmptyInput);
}

TEST_CASE("summary statistics are shift and scale equivariant") {
    std::mt19937_64 rng(27);
    std::normal_distribution<double> z;
    std::vector<double> v(61);
    for (double& x : v) x = std::exp(z(rng));
    const SummaryStatistics s = summarize(v);
    std::vector<double> w;
    for (double x : v) w.push_back(3.0 * x - 7.0);
    const SummaryStatistics t = summarize(w);
    CHECK(t.mean == doctest::Approx(3.0 * s.mean - 7.0));
    CHECK(t.median == doctest::Approx(3.0 * s.median - 7.0));
    CHECK(t.std_dev == doctest::Approx(3.0 * s.std_dev));
    CHECK(*t.skewness == doctest::Approx(*s.skewness));
    CHECK(*t.kurtosis == doctest::Approx(*s.kurtosis));
    CHECK(*s.kurtosis >= 1.0 + *s.skewness * *s.skewness - 1e-12);
}
