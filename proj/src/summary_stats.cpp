#include "cycleprobe/summary_stats.hpp"

#include "cycleprobe/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cycleprobe {

SummaryStatistics summarize(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values to summarize");
    SummaryStatistics s;
    const auto n = static_cast<double>(values.size());
    s.observations = values.size();

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.minimum = sorted.front();
    s.maximum = sorted.back();
    const std::size_t mid = sorted.size() / 2;
    s.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.std_dev = values.size() > 1 ? std::sqrt(m2 * n / (n - 1.0)) : 0.0;
    if (s.maximum > s.minimum && m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.kurtosis = m4 / (m2 * m2);
    }
    return s;
}

} // namespace cycleprobe
