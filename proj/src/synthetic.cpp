#include "cycleprobe/synthetic.hpp"

#include "cycleprobe/error.hpp"
#include "cycleprobe/hp_filter.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

namespace cycleprobe {

CountryPanel make_synthetic_panel(const SyntheticPanelOptions& o) {
    if (o.quarters < 8) throw Error(ErrorCode::InvalidArgument, "synthetic panel needs >= 8 quarters");
    if (o.signal_lag < 1 || o.signal_lag >= o.quarters) {
        throw Error(ErrorCode::InvalidArgument, "signal lag out of range");
    }
    const auto n = static_cast<std::size_t>(o.quarters);
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> log_real(n);
    double cycle = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        cycle = o.cycle_persistence * cycle + o.cycle_innovation_sd * normal(rng);
        log_real[t] = o.log_gdp_level + o.trend_growth * static_cast<double>(t) + cycle;
    }

    // Signals are planted against the cycle the HP filter will actually extract.
    const HpDecomposition hp = hp_decompose(QuarterlySeries(o.start, log_real), o.hp_lambda);
    double var = 0.0;
    for (double c : hp.cycle.values()) var += c * c;
    const double sd = std::sqrt(var / static_cast<double>(n));
    auto z = [&](std::size_t t) { return t < n ? hp.cycle[t] / sd : 0.0; };

    const Quarter base_quarter(2000, 1);
    std::vector<double> nominal(n), deflator(n), rate_long(n), rate_short(n), unemployment(n),
        stock(n);
    double short_dev = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const auto offset =
            static_cast<double>((o.start + static_cast<std::int64_t>(t)) - base_quarter);
        deflator[t] = 100.0 * std::exp(o.inflation * offset);
        nominal[t] = std::exp(log_real[t]) * deflator[t] / 100.0;

        short_dev = 0.9 * short_dev + 0.3 * normal(rng);
        rate_short[t] = o.short_rate_mean + short_dev;
        const double s = o.spread_mean - o.spread_loading * z(t + static_cast<std::size_t>(o.signal_lag)) +
                         o.spread_noise_sd * normal(rng);
        rate_long[t] = rate_short[t] + s;

        unemployment[t] =
            o.unemployment_mean - o.unemployment_loading * z(t + 1) + o.unemployment_noise_sd * normal(rng);
        stock[t] = std::exp(o.log_stock_mean + 0.004 * static_cast<double>(t) +
                            o.stock_loading * z(t + 1) + o.stock_noise_sd * normal(rng));
    }

    return CountryPanel{o.country,
                        QuarterlySeries(o.start, std::move(nominal)),
                        QuarterlySeries(o.start, std::move(deflator)),
                        QuarterlySeries(o.start, std::move(rate_long)),
                        QuarterlySeries(o.start, std::move(rate_short)),
                        QuarterlySeries(o.start, std::move(unemployment)),
                        QuarterlySeries(o.start, std::move(stock))};
}

std::vector<SyntheticPanelOptions> bundled_panel_options(std::uint64_t base_seed) {
    struct Shape {
        const char* country;
        int lag;
        double spread_loading;
        double log_stock_mean;
        double unemployment_mean;
    };
    constexpr Shape shapes[] = {
        {"france", 3, 1.0, 8.20, 9.1},
        {"germany", 3, 0.8, 8.36, 8.9},
        {"italy", 2, 0.8, 9.88, 9.2},
        {"sweden", 6, 1.1, 6.51, 7.1},
        {"uk", 3, 0.45, 8.20, 6.1},
    };
    std::vector<SyntheticPanelOptions> out;
    std::uint64_t seed = base_seed;
    for (const Shape& s : shapes) {
        SyntheticPanelOptions o;
        o.country = s.country;
        o.seed = seed++;
        o.signal_lag = s.lag;
        o.spread_loading = s.spread_loading;
        o.log_stock_mean = s.log_stock_mean;
        o.unemployment_mean = s.unemployment_mean;
        out.push_back(o);
    }
    return out;
}

std::uint64_t monte_carlo_seed(std::uint64_t fallback) {
    const char* env = std::getenv("CYCLEPROBE_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    return (end != nullptr && *end == '\0') ? static_cast<std::uint64_t>(v) : fallback;
}

} // namespace cycleprobe
