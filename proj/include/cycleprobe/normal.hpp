#pragma once

#include <utility>

namespace cycleprobe {

double std_normal_pdf(double x) noexcept;

/// Phi(x) from erfc, accurate in both tails; never exactly 0 or 1 for |x| < 37.
double std_normal_cdf(double x) noexcept;

/// (ln Phi(x), ln(1 - Phi(x))) without cancellation. Beyond the range where
/// erfc stays normal, the lower tail falls back to the asymptotic Mills-ratio series.
std::pair<double, double> log_cdf_pair(double x) noexcept;

/// ln Phi(x) alone.
double log_std_normal_cdf(double x) noexcept;

/// phi(x) / Phi(x), evaluated in log space so it stays finite deep in the lower tail.
double inverse_mills_ratio(double x) noexcept;

/// P(|Z| >= |z|) for standard normal Z.
double two_sided_normal_p(double z) noexcept;

} // namespace cycleprobe
