#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace cycleprobe {

/**
 * Regressors and binary response for one probit model.
 *
 * Column 0 must be the intercept (all ones). Construction enforces n > k,
 * a response with both classes present (DegenerateDummy otherwise), no
 * constant column besides the intercept and no duplicated columns
 * (InvalidDesign).
 */
class DesignMatrix {
public:
    DesignMatrix(Eigen::MatrixXd observations, std::vector<std::string> column_names,
                 std::vector<int> response);

    Eigen::Index rows() const noexcept { return x_.rows(); }
    Eigen::Index cols() const noexcept { return x_.cols(); }
    const Eigen::MatrixXd& observations() const noexcept { return x_; }
    const Eigen::VectorXd& response() const noexcept { return y_; }
    const std::vector<std::string>& column_names() const noexcept { return names_; }

private:
    Eigen::MatrixXd x_;
    Eigen::VectorXd y_;
    std::vector<std::string> names_;
};

struct ProbitOptions {
    int max_iterations = 100;
    double gradient_tolerance = 1e-8;      // max-norm
    double relative_tolerance = 1e-12;     // on the log-likelihood
    double divergence_bound = 1e4;         // ||beta|| beyond this signals separation
    double condition_limit = 1e12;
};

struct ProbitFit {
    std::vector<std::string> column_names;
    Eigen::VectorXd coefficients;
    Eigen::MatrixXd covariance;            // inverse observed information
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd z_stats;
    Eigen::VectorXd p_values;              // two-sided, standard normal
    Eigen::VectorXd fitted_probabilities;
    double log_likelihood = 0.0;
    double null_log_likelihood = 0.0;
    double mcfadden_r2 = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> likelihood_path;   // l(beta) after every accepted Newton step, starting at beta = 0

    Eigen::Index observation_count() const noexcept { return fitted_probabilities.size(); }
    Eigen::Index parameter_count() const noexcept { return coefficients.size(); }
};

double probit_log_likelihood(const DesignMatrix& design, const Eigen::VectorXd& beta);
Eigen::VectorXd probit_gradient(const DesignMatrix& design, const Eigen::VectorXd& beta);
/// Hessian of the log-likelihood (negative definite away from separation).
Eigen::MatrixXd probit_hessian(const DesignMatrix& design, const Eigen::VectorXd& beta);

/// Maximum likelihood by Newton-Raphson with step halving, starting from beta = 0.
/// Throws PerfectSeparation, SingularInformation or NotConverged.
ProbitFit fit_probit(const DesignMatrix& design, const ProbitOptions& options = {});

/// Phi(x'beta). Throws DimensionMismatch when the regressor count differs from the fit.
double predict_prob(const ProbitFit& fit, std::span<const double> regressors);

struct WaldResult {
    std::vector<int> restricted;
    double chi2_stat = 0.0;
    double chi2_p = 1.0;
    double f_stat = 0.0;     // chi2_stat / q
    double f_p = 1.0;        // from F(q, n - k)
    int q = 0;
    int denominator_df = 0;
};

/// Joint test that the listed coefficients are all zero.
WaldResult wald_test(const ProbitFit& fit, std::span<const int> restricted_indices);

} // namespace cycleprobe
