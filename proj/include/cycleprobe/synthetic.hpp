#pragma once

#include "cycleprobe/timeseries.hpp"

#include <cstdint>
#include <string>

namespace cycleprobe {

/**
 * Knobs for a simulated country panel.
 *
 * Log real GDP is a log-linear trend plus an AR(1) cycle. The spread is
 * planted so that spread at t - signal_lag leans against the HP cycle at t
 * (an inverted curve precedes below-trend output), with independent noise on
 * top. Unemployment and the log stock index lead the cycle by one quarter in
 * the same way. Setting a loading to zero makes that variable pure noise.
 */
struct SyntheticPanelOptions {
    std::string country = "synthetic";
    Quarter start{1994, 1};
    int quarters = 61;
    std::uint64_t seed = 1;

    double log_gdp_level = 12.0;
    double trend_growth = 0.005;          // per quarter, log points
    double cycle_persistence = 0.85;
    double cycle_innovation_sd = 0.006;
    double inflation = 0.005;             // deflator growth per quarter

    int signal_lag = 3;
    double spread_mean = 0.4;             // percentage points
    double spread_loading = 1.0;          // pp per standard deviation of the cycle
    double spread_noise_sd = 0.8;

    double unemployment_mean = 8.5;
    double unemployment_loading = 0.6;
    double unemployment_noise_sd = 0.5;

    double log_stock_mean = 8.2;
    double stock_loading = 0.15;
    double stock_noise_sd = 0.15;

    double short_rate_mean = 3.5;
    double hp_lambda = 1600.0;
};

CountryPanel make_synthetic_panel(const SyntheticPanelOptions& options);

/// The five bundled panels (france, germany, italy, sweden, uk) with their planted windows.
std::vector<SyntheticPanelOptions> bundled_panel_options(std::uint64_t base_seed);

/// CYCLEPROBE_SEED when set and numeric, otherwise `fallback`.
std::uint64_t monte_carlo_seed(std::uint64_t fallback);

} // namespace cycleprobe
