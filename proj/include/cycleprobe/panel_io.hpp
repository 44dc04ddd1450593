#pragma once

#include "cycleprobe/pipeline.hpp"
#include "cycleprobe/timeseries.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cycleprobe {

/// Exact header of a panel file.
inline constexpr const char* kPanelHeader =
    "quarter,nominal_gdp,deflator,rate_long_1y,rate_short_3m,unemployment,stock_index";

/**
 * Reads one country's panel.
 *
 * Rows are consecutive quarters (`YYYY:Qn`). A cell may be left empty only in
 * a leading or trailing run of its column, which is how series with different
 * spans share one file; an empty cell between two values is a gap. Errors:
 * ParseError (with line and column), GapInSeries, DuplicateQuarter,
 * NonPositiveValue for nominal GDP, deflator and stock index.
 */
CountryPanel parse_panel_csv(std::istream& in, const std::string& country,
                             const std::string& source_name = "<stream>");
CountryPanel parse_panel_csv(const std::filesystem::path& path, const std::string& country);

/// Writes a panel whose members all share one range.
void write_panel_csv(std::ostream& out, const CountryPanel& panel);

struct PanelSource {
    std::string country;
    std::filesystem::path path;
};

struct CliConfig {
    StudyConfig study;
    std::vector<PanelSource> panels;
    std::filesystem::path output_directory = "cycleprobe-out";
};

/**
 * Parses the JSON study configuration. Panel paths are resolved against
 * `base_directory` (normally the config file's directory). Unknown keys and
 * out-of-range values raise ConfigError.
 */
CliConfig parse_config_json(const std::string& text, const std::filesystem::path& base_directory);
CliConfig load_config(const std::filesystem::path& path);

} // namespace cycleprobe
