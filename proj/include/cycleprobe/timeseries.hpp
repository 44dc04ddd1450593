#pragma once

#include "cycleprobe/quarter.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cycleprobe {

/**
 * Contiguous quarterly observations: value k belongs to quarter start + k.
 *
 * Immutable once built. Construction rejects empty input and non-finite
 * values, so every series in the library is gap-free and finite.
 */
class QuarterlySeries {
public:
    QuarterlySeries(Quarter start, std::vector<double> values);

    Quarter start() const noexcept { return start_; }
    Quarter last() const { return start_ + static_cast<std::int64_t>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }

    double operator[](std::size_t k) const { return values_[k]; }
    /// Value observed in quarter `q`; throws MisalignedSeries outside the range.
    double at(Quarter q) const;
    bool covers(Quarter q) const noexcept { return q >= start_ && q <= last(); }

    /// Sub-series over [first, last]; both ends must lie inside the range.
    QuarterlySeries slice(Quarter first, Quarter last) const;

    friend bool operator==(const QuarterlySeries&, const QuarterlySeries&) = default;

private:
    Quarter start_;
    std::vector<double> values_;
};

using QuarterRange = std::pair<Quarter, Quarter>;

/// One country's raw inputs. Member series may cover different ranges.
struct CountryPanel {
    std::string country;
    QuarterlySeries nominal_gdp;
    QuarterlySeries deflator;      // base year = 100
    QuarterlySeries rate_long;     // 1-year rate, percent p.a.
    QuarterlySeries rate_short;    // 3-month rate, percent p.a.
    QuarterlySeries unemployment;  // percent
    QuarterlySeries stock_index;   // index level

    /// Checks positivity of deflator and stock index and that a common range exists.
    void validate() const;

    /// Same panel with every member restricted to common_range().
    CountryPanel restricted() const;
};

/// Largest quarter range covered by every series. Throws EmptyIntersection.
QuarterRange common_range(std::span<const QuarterlySeries* const> series);
QuarterRange common_range(const CountryPanel& panel);

/// ln(100 * nominal / deflator). Requires identical ranges and positive inputs.
QuarterlySeries real_log_gdp(const QuarterlySeries& nominal, const QuarterlySeries& deflator);

/// Long rate minus short rate, in percentage points.
QuarterlySeries spread(const QuarterlySeries& rate_long, const QuarterlySeries& rate_short);

/// Value at t equals the input at t - k. Start moves forward by k, length shrinks by k.
QuarterlySeries lag(const QuarterlySeries& series, int k);

QuarterlySeries log_series(const QuarterlySeries& series);

} // namespace cycleprobe
