#include "cycleprobe/timeseries.hpp"

#include "cycleprobe/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cycleprobe {

QuarterlySeries::QuarterlySeries(Quarter start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    if (values_.empty()) {
        throw Error(ErrorCode::EmptyInput, "quarterly series must hold at least one value");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw Error(ErrorCode::InvalidArgument,
                        "non-finite value at " + (start_ + static_cast<std::int64_t>(k)).to_string());
        }
    }
}

double QuarterlySeries::at(Quarter q) const {
    if (!covers(q)) {
        throw Error(ErrorCode::MisalignedSeries,
                    q.to_string() + " outside series range " + start_.to_string() + "-" +
                        last().to_string());
    }
    return values_[static_cast<std::size_t>(q - start_)];
}

QuarterlySeries QuarterlySeries::slice(Quarter first, Quarter last_q) const {
    if (first > last_q || !covers(first) || !covers(last_q)) {
        throw Error(ErrorCode::MisalignedSeries,
                    "slice " + first.to_string() + "-" + last_q.to_string() +
                        " not inside " + start_.to_string() + "-" + last().to_string());
    }
    auto begin = values_.begin() + (first - start_);
    auto end = values_.begin() + (last_q - start_) + 1;
    return QuarterlySeries(first, std::vector<double>(begin, end));
}

QuarterRange common_range(std::span<const QuarterlySeries* const> series) {
    if (series.empty()) {
        throw Error(ErrorCode::EmptyInput, "common_range needs at least one series");
    }
    Quarter first = series.front()->start();
    Quarter last = series.front()->last();
    for (const QuarterlySeries* s : series) {
        first = std::max(first, s->start());
        last = std::min(last, s->last());
    }
    if (first > last) {
        throw Error(ErrorCode::EmptyIntersection, "member series share no common quarter");
    }
    return {first, last};
}

QuarterRange common_range(const CountryPanel& panel) {
    const std::array<const QuarterlySeries*, 6> members{
        &panel.nominal_gdp, &panel.deflator,     &panel.rate_long,
        &panel.rate_short,  &panel.unemployment, &panel.stock_index};
    return common_range(members);
}

namespace {

void require_positive(const QuarterlySeries& s, const char* what, ErrorCode code) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!(s[k] > 0.0)) {
            throw Error(code, std::string(what) + " must be positive, got " +
                                  std::to_string(s[k]) + " at " +
                                  (s.start() + static_cast<std::int64_t>(k)).to_string());
        }
    }
}

void require_aligned(const QuarterlySeries& a, const QuarterlySeries& b) {
    if (a.start() != b.start() || a.size() != b.size()) {
        throw Error(ErrorCode::MisalignedSeries,
                    "series ranges differ: " + a.start().to_string() + "-" + a.last().to_string() +
                        " vs " + b.start().to_string() + "-" + b.last().to_string());
    }
}

} // namespace

void CountryPanel::validate() const {
    require_positive(deflator, "deflator", ErrorCode::NonPositiveValue);
    require_positive(stock_index, "stock index", ErrorCode::NonPositiveValue);
    (void)common_range(*this);
}

CountryPanel CountryPanel::restricted() const {
    auto [first, last] = common_range(*this);
    return CountryPanel{country,
                        nominal_gdp.slice(first, last),
                        deflator.slice(first, last),
                        rate_long.slice(first, last),
                        rate_short.slice(first, last),
                        unemployment.slice(first, last),
                        stock_index.slice(first, last)};
}

QuarterlySeries real_log_gdp(const QuarterlySeries& nominal, const QuarterlySeries& deflator) {
    require_aligned(nominal, deflator);
    require_positive(nominal, "nominal GDP", ErrorCode::NonPositiveInput);
    require_positive(deflator, "deflator", ErrorCode::NonPositiveInput);
    std::vector<double> out(nominal.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = std::log(100.0 * nominal[k] / deflator[k]);
    }
    return QuarterlySeries(nominal.start(), std::move(out));
}

QuarterlySeries spread(const QuarterlySeries& rate_long, const QuarterlySeries& rate_short) {
    require_aligned(rate_long, rate_short);
    std::vector<double> out(rate_long.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = rate_long[k] - rate_short[k];
    return QuarterlySeries(rate_long.start(), std::move(out));
}

QuarterlySeries lag(const QuarterlySeries& series, int k) {
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "lag order must be >= 1, got " + std::to_string(k));
    }
    if (static_cast<std::size_t>(k) >= series.size()) {
        throw Error(ErrorCode::LagTooLarge, "lag " + std::to_string(k) +
                                                " leaves no observations of a length-" +
                                                std::to_string(series.size()) + " series");
    }
    auto values = series.values();
    return QuarterlySeries(series.start() + k,
                           std::vector<double>(values.begin(), values.end() - k));
}

QuarterlySeries log_series(const QuarterlySeries& series) {
    require_positive(series, "log input", ErrorCode::NonPositiveInput);
    std::vector<double> out(series.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::log(series[k]);
    return QuarterlySeries(series.start(), std::move(out));
}

} // namespace cycleprobe
