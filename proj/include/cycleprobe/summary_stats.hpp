#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace cycleprobe {

/// Descriptive statistics in the layout of a macro data appendix table.
/// Std. dev. uses the n - 1 divisor; skewness and (non-excess) kurtosis use
/// the population moments. Both are undefined for a constant series.
struct SummaryStatistics {
    double mean = 0.0;
    double median = 0.0;
    double maximum = 0.0;
    double minimum = 0.0;
    double std_dev = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    std::size_t observations = 0;
};

SummaryStatistics summarize(std::span<const double> values);

} // namespace cycleprobe
