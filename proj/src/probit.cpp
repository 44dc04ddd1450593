#include "cycleprobe/probit.hpp"

#include "cycleprobe/error.hpp"
#include "cycleprobe/normal.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cycleprobe {

DesignMatrix::DesignMatrix(Eigen::MatrixXd observations, std::vector<std::string> column_names,
                           std::vector<int> response)
    : x_(std::move(observations)), names_(std::move(column_names)) {
    const Eigen::Index n = x_.rows();
    const Eigen::Index k = x_.cols();
    if (k < 1 || static_cast<Eigen::Index>(names_.size()) != k) {
        throw Error(ErrorCode::DimensionMismatch, "design needs one name per column");
    }
    if (static_cast<Eigen::Index>(response.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "response length differs from design rows");
    }
    if (n <= k) {
        throw Error(ErrorCode::InvalidDesign, "probit needs more observations (" +
                                                  std::to_string(n) + ") than parameters (" +
                                                  std::to_string(k) + ")");
    }
    if (!x_.allFinite()) throw Error(ErrorCode::InvalidDesign, "design contains non-finite values");
    if ((x_.col(0).array() != 1.0).any()) {
        throw Error(ErrorCode::InvalidDesign, "column 0 must be the intercept of ones");
    }
    y_.resize(n);
    bool zero = false, one = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int v = response[static_cast<std::size_t>(i)];
        if (v != 0 && v != 1) throw Error(ErrorCode::InvalidDesign, "response must be 0 or 1");
        (v ? one : zero) = true;
        y_(i) = v;
    }
    if (!zero || !one) {
        throw Error(ErrorCode::DegenerateDummy, "response has a single class (" +
                                                    std::string(one ? "all ones" : "all zeros") +
                                                    ")");
    }
    for (Eigen::Index j = 1; j < k; ++j) {
        if ((x_.col(j).array() == x_(0, j)).all()) {
            throw Error(ErrorCode::InvalidDesign, "column '" + names_[j] + "' is constant");
        }
        for (Eigen::Index m = 1; m < j; ++m) {
            if (x_.col(j) == x_.col(m)) {
                throw Error(ErrorCode::InvalidDesign,
                            "columns '" + names_[m] + "' and '" + names_[j] + "' are identical");
            }
        }
    }
}

namespace {

// Per-observation log-likelihood and its first two derivatives in the index x'beta.
struct Contribution {
    double log_lik;
    double score;      // generalized residual
    double curvature;  // second derivative, always negative
};

Contribution contribution(double index, bool success) noexcept {
    const double eta = success ? index : -index;
    const double mills = inverse_mills_ratio(eta);
    const double score = success ? mills : -mills;
    return {log_std_normal_cdf(eta), score, -score * (score + index)};
}

struct Derivatives {
    double log_lik = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};

Derivatives evaluate(const DesignMatrix& d, const Eigen::VectorXd& beta, bool second_order) {
    const Eigen::MatrixXd& x = d.observations();
    const Eigen::VectorXd index = x * beta;
    Derivatives out;
    out.gradient = Eigen::VectorXd::Zero(x.cols());
    if (second_order) out.hessian = Eigen::MatrixXd::Zero(x.cols(), x.cols());
    Eigen::VectorXd weights(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Contribution c = contribution(index(i), d.response()(i) > 0.5);
        out.log_lik += c.log_lik;
        out.gradient.noalias() += c.score * x.row(i).transpose();
        weights(i) = c.curvature;
    }
    if (second_order) out.hessian.noalias() = x.transpose() * weights.asDiagonal() * x;
    return out;
}

void check_dimension(const DesignMatrix& d, const Eigen::VectorXd& beta) {
    if (beta.size() != d.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "coefficient vector has " +
                                                      std::to_string(beta.size()) +
                                                      " entries, design has " +
                                                      std::to_string(d.cols()) + " columns");
    }
}

double condition_number(const Eigen::MatrixXd& spd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spd, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

} // namespace

double probit_log_likelihood(const DesignMatrix& design, const Eigen::VectorXd& beta) {
    check_dimension(design, beta);
    const Eigen::VectorXd index = design.observations() * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < index.size(); ++i) {
        ll += log_std_normal_cdf(design.response()(i) > 0.5 ? index(i) : -index(i));
    }
    return ll;
}

Eigen::VectorXd probit_gradient(const DesignMatrix& design, const Eigen::VectorXd& beta) {
    check_dimension(design, beta);
    return evaluate(design, beta, false).gradient;
}

Eigen::MatrixXd probit_hessian(const DesignMatrix& design, const Eigen::VectorXd& beta) {
    check_dimension(design, beta);
    return evaluate(design, beta, true).hessian;
}

ProbitFit fit_probit(const DesignMatrix& design, const ProbitOptions& options) {
    const Eigen::Index k = design.cols();
    const Eigen::Index n = design.rows();
    // Any beta with l(beta) > n_wrong * ln(1/2) for n_wrong = 0 classifies every
    // observation strictly correctly, i.e. it is a separating hyperplane.
    const double separation_certificate = -std::numbers::ln2;

    auto separated = [&](double ll, const Eigen::VectorXd& b) {
        return ll > separation_certificate || b.norm() > options.divergence_bound;
    };

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    Derivatives at = evaluate(design, beta, true);
    ProbitFit fit;
    fit.likelihood_path.push_back(at.log_lik);

    int iteration = 0;
    bool converged = false;
    while (true) {
        if (at.gradient.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
            converged = true;
            break;
        }
        if (iteration >= options.max_iterations) break;
        ++iteration;

        const Eigen::MatrixXd information = -at.hessian;
        if (condition_number(information) > options.condition_limit) {
            if (separated(at.log_lik, beta)) {
                throw Error(ErrorCode::PerfectSeparation,
                            "classes are separated by a hyperplane; MLE does not exist");
            }
            throw Error(ErrorCode::SingularInformation, "information matrix is numerically singular");
        }
        const Eigen::VectorXd step = information.ldlt().solve(at.gradient);

        double scale = 1.0;
        Eigen::VectorXd candidate = beta + step;
        double candidate_ll = probit_log_likelihood(design, candidate);
        int halvings = 0;
        while (!(candidate_ll >= at.log_lik) && halvings < 60) {
            scale *= 0.5;
            candidate = beta + scale * step;
            candidate_ll = probit_log_likelihood(design, candidate);
            ++halvings;
        }
        if (!(candidate_ll >= at.log_lik)) {
            // No ascent direction left at working precision.
            converged = true;
            break;
        }
        const double relative_change =
            std::abs(candidate_ll - at.log_lik) / std::max(std::abs(at.log_lik), 1e-300);
        beta = candidate;
        at = evaluate(design, beta, true);
        fit.likelihood_path.push_back(at.log_lik);

        if (separated(at.log_lik, beta)) {
            throw Error(ErrorCode::PerfectSeparation,
                        "coefficients diverge while the likelihood keeps improving; the classes "
                        "are separated by a hyperplane");
        }
        if (relative_change < options.relative_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NotConverged, "Newton-Raphson did not converge within " +
                                                 std::to_string(options.max_iterations) +
                                                 " iterations");
    }

    const Eigen::MatrixXd information = -at.hessian;
    if (condition_number(information) > options.condition_limit) {
        throw Error(ErrorCode::SingularInformation,
                    "information matrix at the optimum is numerically singular");
    }
    fit.column_names = design.column_names();
    fit.coefficients = beta;
    fit.covariance = information.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    fit.covariance = 0.5 * (fit.covariance + fit.covariance.transpose()).eval();
    fit.standard_errors = fit.covariance.diagonal().cwiseSqrt();
    fit.z_stats = beta.cwiseQuotient(fit.standard_errors);
    fit.p_values.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) fit.p_values(j) = two_sided_normal_p(fit.z_stats(j));

    const Eigen::VectorXd index = design.observations() * beta;
    fit.fitted_probabilities.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) fit.fitted_probabilities(i) = std_normal_cdf(index(i));

    const double p_bar = design.response().mean();
    fit.null_log_likelihood =
        static_cast<double>(n) * (p_bar * std::log(p_bar) + (1.0 - p_bar) * std::log1p(-p_bar));
    // The intercept-only model is the null model; its optimum is the closed form.
    fit.log_likelihood = k == 1 ? fit.null_log_likelihood : at.log_lik;
    fit.mcfadden_r2 = std::max(0.0, 1.0 - fit.log_likelihood / fit.null_log_likelihood);
    fit.iterations = iteration;
    fit.converged = true;
    return fit;
}

double predict_prob(const ProbitFit& fit, std::span<const double> regressors) {
    if (static_cast<Eigen::Index>(regressors.size()) != fit.coefficients.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(fit.coefficients.size()) + " regressors, got " +
                        std::to_string(regressors.size()));
    }
    double index = 0.0;
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        index += regressors[j] * fit.coefficients(static_cast<Eigen::Index>(j));
    }
    return std_normal_cdf(index);
}

WaldResult wald_test(const ProbitFit& fit, std::span<const int> restricted_indices) {
    const Eigen::Index k = fit.coefficients.size();
    if (restricted_indices.empty()) {
        throw Error(ErrorCode::InvalidArgument, "Wald test needs at least one restriction");
    }
    const auto q = static_cast<Eigen::Index>(restricted_indices.size());
    Eigen::VectorXd b(q);
    Eigen::MatrixXd v(q, q);
    for (Eigen::Index a = 0; a < q; ++a) {
        const int ia = restricted_indices[static_cast<std::size_t>(a)];
        if (ia < 0 || ia >= k) {
            throw Error(ErrorCode::InvalidArgument,
                        "restricted index " + std::to_string(ia) + " out of range");
        }
        for (Eigen::Index c = 0; c < a; ++c) {
            if (restricted_indices[static_cast<std::size_t>(c)] == ia) {
                throw Error(ErrorCode::InvalidArgument, "restricted indices must be distinct");
            }
        }
        b(a) = fit.coefficients(ia);
        for (Eigen::Index c = 0; c < q; ++c) {
            v(a, c) = fit.covariance(ia, restricted_indices[static_cast<std::size_t>(c)]);
        }
    }
    if (condition_number(v) > 1e12) {
        throw Error(ErrorCode::SingularSubcovariance, "restricted covariance block is singular");
    }

    WaldResult result;
    result.restricted.assign(restricted_indices.begin(), restricted_indices.end());
    result.q = static_cast<int>(q);
    result.denominator_df = static_cast<int>(fit.observation_count() - k);
    result.chi2_stat = b.dot(v.ldlt().solve(b));
    result.f_stat = result.chi2_stat / static_cast<double>(q);

    const boost::math::chi_squared chi2(static_cast<double>(q));
    result.chi2_p = boost::math::cdf(boost::math::complement(chi2, result.chi2_stat));
    const boost::math::fisher_f f(static_cast<double>(q), static_cast<double>(result.denominator_df));
    result.f_p = boost::math::cdf(boost::math::complement(f, result.f_stat));
    return result;
}

} // namespace cycleprobe
