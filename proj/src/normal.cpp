#include "cycleprobe/normal.hpp"

#include <cmath>

namespace cycleprobe {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Below this point erfc(-x / sqrt 2) drifts into subnormals.
constexpr double kAsymptoticCut = -35.0;

double log_pdf(double x) noexcept { return -0.5 * x * x - kLogSqrt2Pi; }

// ln Phi(x) for x << 0: ln phi(x) - ln|x| + ln(1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - 945/x^10).
double log_cdf_lower_asymptotic(double x) noexcept {
    const double inv2 = 1.0 / (x * x);
    double series = 1.0;
    double term = 1.0;
    for (int k = 1; k <= 5; ++k) {
        term *= -(2.0 * k - 1.0) * inv2;
        series += term;
    }
    return log_pdf(x) - std::log(-x) + std::log(series);
}

} // namespace

double std_normal_pdf(double x) noexcept { return std::exp(log_pdf(x)); }

double std_normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double log_std_normal_cdf(double x) noexcept {
    if (x > 0.0) return std::log1p(-0.5 * std::erfc(x * kInvSqrt2));
    if (x > kAsymptoticCut) return std::log(0.5 * std::erfc(-x * kInvSqrt2));
    return log_cdf_lower_asymptotic(x);
}

std::pair<double, double> log_cdf_pair(double x) noexcept {
    return {log_std_normal_cdf(x), log_std_normal_cdf(-x)};
}

double inverse_mills_ratio(double x) noexcept {
    if (x > kAsymptoticCut) return std::exp(log_pdf(x) - log_std_normal_cdf(x));
    return std::exp(log_pdf(x) - log_cdf_lower_asymptotic(x));
}

double two_sided_normal_p(double z) noexcept { return std::erfc(std::abs(z) * kInvSqrt2); }

} // namespace cycleprobe
