#include "cycleprobe/forecast_eval.hpp"

#include "cycleprobe/error.hpp"

#include <cmath>
#include <string>

namespace cycleprobe {

namespace {

void check_inputs(std::span<const double> actual, std::span<const double> forecast) {
    if (actual.size() != forecast.size()) {
        throw Error(ErrorCode::LengthMismatch, "actual has " + std::to_string(actual.size()) +
                                                   " values, forecast has " +
                                                   std::to_string(forecast.size()));
    }
    if (actual.empty()) throw Error(ErrorCode::EmptyInput, "no observations to evaluate");
}

} // namespace

double rmse(std::span<const double> actual, std::span<const double> forecast) {
    check_inputs(actual, forecast);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - forecast[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(actual.size()));
}

double mae(std::span<const double> actual, std::span<const double> forecast) {
    check_inputs(actual, forecast);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) sum += std::abs(actual[i] - forecast[i]);
    return sum / static_cast<double>(actual.size());
}

MapeResult mape(std::span<const double> actual, std::span<const double> forecast) {
    check_inputs(actual, forecast);
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) continue;
        sum += std::abs((actual[i] - forecast[i]) / actual[i]);
        ++used;
    }
    if (used == 0) {
        throw Error(ErrorCode::AllActualsZero, "MAPE is undefined when every actual value is zero");
    }
    return {100.0 * sum / static_cast<double>(used), actual.size() - used};
}

EvaluationReport evaluate_forecast(std::span<const double> actual, std::span<const double> forecast) {
    const MapeResult m = mape(actual, forecast);
    return EvaluationReport{rmse(actual, forecast), mae(actual, forecast), m.percent,
                            actual.size() - m.skipped_zero_actual, m.skipped_zero_actual};
}

} // namespace cycleprobe
