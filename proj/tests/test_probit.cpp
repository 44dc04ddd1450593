#include "cycleprobe/error.hpp"
#include "cycleprobe/normal.hpp"
#include "cycleprobe/probit.hpp"

#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

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

DesignMatrix intercept_only(int ones, int zeros) {
    std::vector<int> y(static_cast<std::size_t>(ones), 1);
    y.resize(static_cast<std::size_t>(ones + zeros), 0);
    return DesignMatrix(Eigen::MatrixXd::Ones(ones + zeros, 1), {"const"}, y);
}

// y = 1{x'beta + e > 0}, x_0 = 1 and the rest standard normal.
DesignMatrix simulate(const Eigen::VectorXd& beta, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd x(n, beta.size());
    std::vector<int> y(static_cast<std::size_t>(n));
    std::vector<std::string> names{"const"};
    for (Eigen::Index j = 1; j < beta.size(); ++j) names.push_back("x" + std::to_string(j));
    for (int i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < beta.size(); ++j) x(i, j) = z(rng);
        y[static_cast<std::size_t>(i)] = x.row(i).dot(beta) + z(rng) > 0.0 ? 1 : 0;
    }
    return DesignMatrix(x, names, y);
}

std::vector<int> response_of(const DesignMatrix& d) {
    std::vector<int> y;
    for (Eigen::Index i = 0; i < d.rows(); ++i) y.push_back(static_cast<int>(d.response()(i)));
    return y;
}

} // namespace

TEST_CASE("design validation") {
    Eigen::MatrixXd x(4, 2);
    x << 1, 0.5, 1, -0.2, 1, 1.5, 1, 0.1;
    CHECK(code_of([&] { DesignMatrix(x, {"const", "x"}, {1, 1, 1, 1}); }) == ErrorCode::DegenerateDummy);
    CHECK(code_of([&] { DesignMatrix(x, {"const", "x"}, {0, 0, 0, 0}); }) == ErrorCode::DegenerateDummy);
    CHECK(code_of([&] { DesignMatrix(x, {"const"}, {0, 1, 0, 1}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { DesignMatrix(x, {"const", "x"}, {0, 1, 0}); }) == ErrorCode::DimensionMismatch);

    Eigen::MatrixXd no_intercept = x;
    no_intercept(2, 0) = 0.0;
    CHECK(code_of([&] { DesignMatrix(no_intercept, {"const", "x"}, {0, 1, 0, 1}); }) == ErrorCode::InvalidDesign);

    Eigen::MatrixXd constant = x;
    constant.col(1).setConstant(2.0);
    CHECK(code_of([&] { DesignMatrix(constant, {"const", "x"}, {0, 1, 0, 1}); }) == ErrorCode::InvalidDesign);

    Eigen::MatrixXd dup(4, 3);
    dup << x, x.col(1);
    CHECK(code_of([&] { DesignMatrix(dup, {"const", "x", "x2"}, {0, 1, 0, 1}); }) == ErrorCode::InvalidDesign);

    CHECK(code_of([&] { DesignMatrix(x.topRows(2), {"const", "x"}, {0, 1}); }) == ErrorCode::InvalidDesign);
    CHECK(code_of([&] { DesignMatrix(x, {"const", "x"}, {0, 2, 0, 1}); }) == ErrorCode::InvalidDesign);
}

TEST_CASE("intercept-only closed forms") {
    SUBCASE("balanced response") {
        const ProbitFit fit = fit_probit(intercept_only(30, 30));
        CHECK(std::abs(fit.coefficients(0)) < 1e-12);
        CHECK(fit.log_likelihood == doctest::Approx(60 * std::log(0.5)));
        CHECK(fit.mcfadden_r2 == 0.0);
        CHECK(fit.converged);
    }
    SUBCASE("three quarters ones") {
        const ProbitFit fit = fit_probit(intercept_only(45, 15));
        CHECK(std::abs(fit.coefficients(0) - 0.6744897501960817) <= 1e-4);
        CHECK(std_normal_cdf(fit.coefficients(0)) == doctest::Approx(0.75).epsilon(1e-9));
        CHECK(fit.mcfadden_r2 == 0.0);
        CHECK(fit.log_likelihood == fit.null_log_likelihood);
        CHECK(fit.null_log_likelihood == doctest::Approx(60 * (0.75 * std::log(0.75) + 0.25 * std::log(0.25))));
    }
}

TEST_CASE("recovers known coefficients") {
    std::mt19937_64 rng(20100506);
    const Eigen::Vector2d truth(-0.5, 1.2);
    const DesignMatrix d = simulate(truth, 200, rng);
    const ProbitFit fit = fit_probit(d);
    CHECK(fit.converged);
    CHECK(fit.iterations <= 25);
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(std::abs(fit.coefficients(j) - truth(j)) <= 3.0 * fit.standard_errors(j));
    }
    CHECK(fit.log_likelihood >= probit_log_likelihood(d, truth));

    // fit diagnostics invariants
    CHECK(fit.log_likelihood >= fit.null_log_likelihood);
    CHECK(fit.mcfadden_r2 >= 0.0);
    CHECK(fit.mcfadden_r2 < 1.0);
    CHECK(fit.mcfadden_r2 == doctest::Approx(1.0 - fit.log_likelihood / fit.null_log_likelihood));
    CHECK((fit.covariance - fit.covariance.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fit.covariance);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    CHECK((fit.fitted_probabilities.array() > 0.0).all());
    CHECK((fit.fitted_probabilities.array() < 1.0).all());
    CHECK((fit.p_values.array() >= 0.0).all());
    CHECK((fit.p_values.array() <= 1.0).all());
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(fit.z_stats(j) == doctest::Approx(fit.coefficients(j) / std::sqrt(fit.covariance(j, j))));
    }
}

TEST_CASE("likelihood ascent is monotone") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector3d truth(0.3, -1.0, 0.6);
        const ProbitFit fit = fit_probit(simulate(truth, 80, rng));
        REQUIRE(fit.likelihood_path.size() >= 2);
        for (std::size_t i = 1; i < fit.likelihood_path.size(); ++i) {
            CHECK(fit.likelihood_path[i] >= fit.likelihood_path[i - 1]);
        }
        CHECK(fit.likelihood_path.back() == doctest::Approx(fit.log_likelihood));
    }
}

TEST_CASE("analytic derivatives match finite differences") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Vector3d truth(z(rng) * 0.5, z(rng), z(rng));
        const DesignMatrix d = simulate(truth, 120, rng);
        const ProbitFit fit = fit_probit(d);
        for (const Eigen::VectorXd& at : {Eigen::VectorXd(Eigen::VectorXd::Zero(3)), fit.coefficients}) {
            const Eigen::VectorXd fd =
                oracle::fd_gradient([&](const Eigen::VectorXd& b) { return probit_log_likelihood(d, b); }, at);
            CHECK(oracle::max_relative_error(probit_gradient(d, at), fd) <= 1e-5);

            const Eigen::MatrixXd fh =
                oracle::fd_jacobian([&](const Eigen::VectorXd& b) { return probit_gradient(d, b); }, at);
            const Eigen::MatrixXd h = probit_hessian(d, at);
            for (Eigen::Index c = 0; c < 3; ++c) {
                CHECK(oracle::max_relative_error(h.col(c), fh.col(c)) <= 1e-4);
            }
        }
    }
}

TEST_CASE("perfect separation is detected") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    Eigen::MatrixXd x(200, 2);
    std::vector<int> y(200);
    for (int i = 0; i < 200; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = z(rng);
        y[static_cast<std::size_t>(i)] = x(i, 1) > 0.0 ? 1 : 0;
    }
    const DesignMatrix d(x, {"const", "x"}, y);
    CHECK(code_of([&] { fit_probit(d); }) == ErrorCode::PerfectSeparation);
}

TEST_CASE("iteration cap raises NotConverged") {
    std::mt19937_64 rng(8);
    const DesignMatrix d = simulate(Eigen::Vector2d(0.2, 0.9), 100, rng);
    ProbitOptions tight;
    tight.max_iterations = 1;
    CHECK(code_of([&] { fit_probit(d, tight); }) == ErrorCode::NotConverged);
}

TEST_CASE("collinear regressors raise SingularInformation") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> z;
    Eigen::MatrixXd x(60, 3);
    std::vector<int> y(60);
    for (int i = 0; i < 60; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = z(rng);
        x(i, 2) = 2.0 * x(i, 1) + 1.0;
        y[static_cast<std::size_t>(i)] = x(i, 1) + z(rng) > 0 ? 1 : 0;
    }
    CHECK(code_of([&] { fit_probit(DesignMatrix(x, {"const", "a", "b"}, y)); }) == ErrorCode::SingularInformation);
}

TEST_CASE("rescaling a regressor rescales only its coefficient") {
    std::mt19937_64 rng(12);
    const DesignMatrix d = simulate(Eigen::Vector3d(-0.2, 0.8, -0.5), 150, rng);
    const ProbitFit base = fit_probit(d);
    for (double c : {-3.0, 0.01, 250.0}) {
        Eigen::MatrixXd x = d.observations();
        x.col(2) *= c;
        const std::vector<int> y = response_of(d);
        const ProbitFit scaled = fit_probit(DesignMatrix(x, d.column_names(), y));
        CHECK(scaled.coefficients(2) == doctest::Approx(base.coefficients(2) / c).epsilon(1e-8));
        CHECK(scaled.log_likelihood == doctest::Approx(base.log_likelihood).epsilon(1e-8));
        CHECK(scaled.mcfadden_r2 == doctest::Approx(base.mcfadden_r2).epsilon(1e-8));
        CHECK((scaled.fitted_probabilities - base.fitted_probabilities).cwiseAbs().maxCoeff() <= 1e-8);
        for (Eigen::Index j = 0; j < 3; ++j) {
            CHECK(std::abs(std::abs(scaled.z_stats(j)) - std::abs(base.z_stats(j))) <= 1e-8 * std::max(1.0, std::abs(base.z_stats(j))));
        }
        const int idx[] = {1, 2};
        CHECK(wald_test(scaled, idx).chi2_stat == doctest::Approx(wald_test(base, idx).chi2_stat).epsilon(1e-8));
    }
}

TEST_CASE("adding a regressor never lowers the likelihood") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 20; ++trial) {
        const DesignMatrix full = simulate(Eigen::Vector3d(0.1, 0.7, 0.0), 90, rng);
        const std::vector<int> y = response_of(full);
        const DesignMatrix one(full.observations().leftCols(1), {"const"}, y);
        const DesignMatrix two(full.observations().leftCols(2), {"const", "x1"}, y);
        const double l1 = fit_probit(one).log_likelihood;
        const double l2 = fit_probit(two).log_likelihood;
        const double l3 = fit_probit(full).log_likelihood;
        CHECK(l2 >= l1 - 1e-9);
        CHECK(l3 >= l2 - 1e-9);
    }
}

TEST_CASE("predict_prob") {
    ProbitFit fit;
    fit.coefficients = Eigen::Vector2d(0.6745, 0.0);
    const double x1[] = {1.0, 123.0};
    CHECK(std::abs(predict_prob(fit, x1) - 0.75) <= 1e-4);

    fit.coefficients = Eigen::Vector2d(0.5, -0.25);
    const double at_zero[] = {1.0, 2.0};
    CHECK(predict_prob(fit, at_zero) == 0.5);
    double previous = 1.0;
    for (double s = -5.0; s <= 5.0; s += 0.5) {
        const double x[] = {1.0, s};
        const double p = predict_prob(fit, x);
        CHECK(p < previous);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
        previous = p;
    }
    const double wrong[] = {1.0};
    CHECK(code_of([&] { predict_prob(fit, wrong); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("wald test") {
    std::mt19937_64 rng(21);
    const DesignMatrix d = simulate(Eigen::Vector3d(-0.3, 0.9, 0.4), 150, rng);
    const ProbitFit fit = fit_probit(d);

    SUBCASE("single restriction equals z squared") {
        for (int j = 0; j < 3; ++j) {
            const int idx[] = {j};
            const WaldResult w = wald_test(fit, idx);
            CHECK(std::abs(w.chi2_stat - fit.z_stats(j) * fit.z_stats(j)) <= 1e-10 * std::max(1.0, w.chi2_stat));
            CHECK(w.chi2_p == doctest::Approx(fit.p_values(j)).epsilon(1e-9));
            CHECK(w.f_stat == w.chi2_stat);
            CHECK(w.denominator_df == 147);
        }
    }
    SUBCASE("zero estimate contributes nothing under a diagonal covariance") {
        ProbitFit f;
        f.coefficients = Eigen::Vector3d(0.4, 0.0, 1.5);
        f.covariance = Eigen::Vector3d(0.04, 0.09, 0.25).asDiagonal();
        f.fitted_probabilities = Eigen::VectorXd::Constant(60, 0.5);
        const int zero_only[] = {1};
        CHECK(wald_test(f, zero_only).chi2_stat == 0.0);
        CHECK(wald_test(f, zero_only).chi2_p == 1.0);
        const int both[] = {1, 2};
        const int last[] = {2};
        CHECK(wald_test(f, both).chi2_stat == doctest::Approx(wald_test(f, last).chi2_stat));
        CHECK(wald_test(f, both).chi2_stat == doctest::Approx(1.5 * 1.5 / 0.25));
    }
    SUBCASE("bad restrictions") {
        const int none[] = {0};
        CHECK(code_of([&] { wald_test(fit, std::span<const int>(none, 0)); }) == ErrorCode::InvalidArgument);
        const int out_of_range[] = {3};
        CHECK(code_of([&] { wald_test(fit, out_of_range); }) == ErrorCode::InvalidArgument);
        const int twice[] = {1, 1};
        CHECK(code_of([&] { wald_test(fit, twice); }) == ErrorCode::InvalidArgument);

        ProbitFit f;
        f.coefficients = Eigen::Vector3d(0.4, 0.3, 1.5);
        f.covariance = Eigen::Vector3d(0.04, 0.0, 0.25).asDiagonal();
        f.fitted_probabilities = Eigen::VectorXd::Constant(60, 0.5);
        const int singular[] = {1, 2};
        CHECK(code_of([&] { wald_test(f, singular); }) == ErrorCode::SingularSubcovariance);
    }
}

TEST_CASE("joint test probabilities pair up as in the hypothesis-testing table") {
    // For each country: chi2 probability, F probability, residual degrees of freedom
    // of a four-parameter probit on the implied sample.
    struct Row {
        const char* country;
        double chi2_p;
        double f_p;
        int df;
    };
    const Row rows[] = {{"France", 0.171, 0.181, 54},
                        {"Germany", 0.008, 0.012, 54},
                        {"Italy", 0.049, 0.057, 55},
                        {"Sweden", 0.039, 0.045, 63},
                        {"U.K.", 0.004, 0.007, 66}};
    for (const Row& r : rows) {
        CAPTURE(r.country);
        const double w = boost::math::quantile(boost::math::complement(boost::math::chi_squared(2.0), r.chi2_p));
        ProbitFit f;
        f.coefficients = Eigen::Vector4d(0.1, -0.5, std::sqrt(w), 0.0);
        f.covariance = Eigen::Matrix4d::Identity();
        f.fitted_probabilities = Eigen::VectorXd::Constant(r.df + 4, 0.5);
        const int idx[] = {2, 3};
        const WaldResult res = wald_test(f, idx);
        CHECK(res.chi2_p == doctest::Approx(r.chi2_p).epsilon(1e-9));
        CHECK(std::abs(res.f_p - r.f_p) <= 0.002);
    }
    // Germany rejects at 5% on both
    const double w = boost::math::quantile(boost::math::complement(boost::math::chi_squared(2.0), 0.008));
    ProbitFit g;
    g.coefficients = Eigen::Vector4d(0.0, 0.0, std::sqrt(w), 0.0);
    g.covariance = Eigen::Matrix4d::Identity();
    g.fitted_probabilities = Eigen::VectorXd::Constant(58, 0.5);
    const int idx[] = {2, 3};
    CHECK(wald_test(g, idx).chi2_p < 0.05);
    CHECK(wald_test(g, idx).f_p < 0.05);
}

TEST_CASE("wald p-values are uniform under a true null") {
    std::mt19937_64 rng(20240101);
    std::vector<double> p;
    for (int rep = 0; rep < 500; ++rep) {
        const ProbitFit fit = fit_probit(simulate(Eigen::Vector3d(-0.5, 1.2, 0.0), 200, rng));
        const int idx[] = {2};
        p.push_back(wald_test(fit, idx).chi2_p);
    }
    CHECK(oracle::ks_distance_from_uniform(p) < 0.08);
}
