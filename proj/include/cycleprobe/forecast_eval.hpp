#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace cycleprobe {

/// How MAPE treats quarters whose actual value is zero. Printed in every report.
inline constexpr std::string_view kMapeConvention = "skip-zero-actual";

// Errors are e_t = actual_t - forecast_t. All three metrics require equal,
// non-zero lengths (LengthMismatch / EmptyInput).

double rmse(std::span<const double> actual, std::span<const double> forecast);
double mae(std::span<const double> actual, std::span<const double> forecast);

struct MapeResult {
    double percent;
    std::size_t skipped_zero_actual;
};

/// 100 * mean |e_t / actual_t| over quarters with actual_t != 0; the rest are
/// counted in `skipped_zero_actual`. Throws AllActualsZero if nothing is left.
MapeResult mape(std::span<const double> actual, std::span<const double> forecast);

struct EvaluationReport {
    double rmse = 0.0;
    double mae = 0.0;
    double mape = 0.0;
    std::size_t n_evaluated = 0;          // observations entering MAPE
    std::size_t n_skipped_zero_actual = 0;
};

EvaluationReport evaluate_forecast(std::span<const double> actual, std::span<const double> forecast);

} // namespace cycleprobe
