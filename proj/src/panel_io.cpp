#include "cycleprobe/panel_io.hpp"

#include "cycleprobe/error.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace cycleprobe {

namespace {

constexpr std::size_t kColumns = 7;
constexpr std::array<const char*, kColumns> kColumnNames{
    "quarter", "nominal_gdp", "deflator", "rate_long_1y", "rate_short_3m", "unemployment", "stock_index"};
constexpr std::array<bool, kColumns> kMustBePositive{false, true, true, false, false, false, true};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, std::size_t column,
                              const std::string& what) {
    throw Error(ErrorCode::ParseError, source + ": line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + what);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        out.push_back(trim(line.substr(begin, comma - begin)));
        if (comma == std::string_view::npos) break;
        begin = comma + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view cell) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

} // namespace

CountryPanel parse_panel_csv(std::istream& in, const std::string& country, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) parse_error(source, 1, 1, "empty file, expected header");
    if (trim(line) != kPanelHeader) {
        parse_error(source, 1, 1, std::string("header must be '") + kPanelHeader + "'");
    }

    std::optional<Quarter> start;
    std::optional<Quarter> previous;
    std::set<Quarter> seen;
    std::array<std::vector<std::optional<double>>, kColumns> cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != kColumns) {
            parse_error(source, line_no, std::min(fields.size(), kColumns) + (fields.size() > kColumns ? 1 : 0),
                        "expected " + std::to_string(kColumns) + " fields, found " +
                            std::to_string(fields.size()));
        }
        const auto quarter = Quarter::parse(fields[0]);
        if (!quarter) {
            parse_error(source, line_no, 1, "invalid quarter token '" + std::string(fields[0]) + "'");
        }
        if (previous) {
            const Quarter expected = previous->successor();
            if (*quarter > expected) {
                throw Error(ErrorCode::GapInSeries, source + ": line " + std::to_string(line_no) +
                                                        ": quarter " + expected.to_string() +
                                                        " is missing (next row is " +
                                                        quarter->to_string() + ")");
            }
            if (*quarter < expected) {
                if (seen.count(*quarter)) {
                    throw Error(ErrorCode::DuplicateQuarter, source + ": line " + std::to_string(line_no) +
                                                                 ": quarter " + quarter->to_string() +
                                                                 " appears twice");
                }
                parse_error(source, line_no, 1, "quarter " + quarter->to_string() + " is out of order");
            }
        } else {
            start = quarter;
        }
        previous = quarter;
        seen.insert(*quarter);

        for (std::size_t c = 1; c < kColumns; ++c) {
            if (fields[c].empty()) {
                cells[c].push_back(std::nullopt);
                continue;
            }
            const auto v = parse_number(fields[c]);
            if (!v) {
                parse_error(source, line_no, c + 1,
                            "'" + std::string(fields[c]) + "' is not a finite number (" + kColumnNames[c] + ")");
            }
            if (kMustBePositive[c] && !(*v > 0.0)) {
                throw Error(ErrorCode::NonPositiveValue, source + ": line " + std::to_string(line_no) +
                                                             ", column " + std::to_string(c + 1) + ": " +
                                                             kColumnNames[c] + " must be positive, got " +
                                                             std::string(fields[c]));
            }
            cells[c].push_back(*v);
        }
    }
    if (!start) parse_error(source, line_no, 1, "no data rows");

    std::vector<QuarterlySeries> series;
    for (std::size_t c = 1; c < kColumns; ++c) {
        const auto& col = cells[c];
        std::size_t first = 0;
        while (first < col.size() && !col[first]) ++first;
        if (first == col.size()) parse_error(source, 2, c + 1, std::string(kColumnNames[c]) + " has no values");
        std::size_t last = col.size() - 1;
        while (!col[last]) --last;
        std::vector<double> values;
        for (std::size_t k = first; k <= last; ++k) {
            const Quarter q = *start + static_cast<std::int64_t>(k);
            if (!col[k]) {
                throw Error(ErrorCode::GapInSeries, source + ": " + kColumnNames[c] + " is missing " +
                                                        q.to_string() + " (line " +
                                                        std::to_string(k + 2) + ")");
            }
            values.push_back(*col[k]);
        }
        series.emplace_back(*start + static_cast<std::int64_t>(first), std::move(values));
    }
    return CountryPanel{country,   series[0], series[1], series[2],
                        series[3], series[4], series[5]};
}

CountryPanel parse_panel_csv(const std::filesystem::path& path, const std::string& country) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open panel file " + path.string());
    return parse_panel_csv(in, country, path.string());
}

void write_panel_csv(std::ostream& out, const CountryPanel& panel) {
    for (const QuarterlySeries* m : {&panel.deflator, &panel.rate_long, &panel.rate_short,
                                     &panel.unemployment, &panel.stock_index}) {
        if (m->start() != panel.nominal_gdp.start() || m->size() != panel.nominal_gdp.size()) {
            throw Error(ErrorCode::MisalignedSeries, "write_panel_csv needs identically ranged members");
        }
    }
    const Quarter first = panel.nominal_gdp.start();
    const Quarter last = panel.nominal_gdp.last();
    out << kPanelHeader << '\n';
    char buf[256];
    for (Quarter q = first; q <= last; q = q.successor()) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", q.to_string().c_str(),
                      panel.nominal_gdp.at(q), panel.deflator.at(q), panel.rate_long.at(q),
                      panel.rate_short.at(q), panel.unemployment.at(q), panel.stock_index.at(q));
        out << buf;
    }
}

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& j, const char* key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::ConfigError, std::string("config key '") + key + "' has the wrong type");
    }
}

} // namespace

CliConfig parse_config_json(const std::string& text, const std::filesystem::path& base_directory) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");

    CliConfig cfg;
    for (const auto& [key, value] : root.items()) {
        if (key == "panels") {
            if (!value.is_array()) throw Error(ErrorCode::ConfigError, "'panels' must be an array");
            for (const json& p : value) {
                if (!p.is_object() || !p.contains("country") || !p.contains("path")) {
                    throw Error(ErrorCode::ConfigError, "each panel needs 'country' and 'path'");
                }
                std::filesystem::path path = get_as<std::string>(p.at("path"), "path");
                if (path.is_relative()) path = base_directory / path;
                cfg.panels.push_back({get_as<std::string>(p.at("country"), "country"), path});
            }
        } else if (key == "lambda") {
            cfg.study.lambda = get_as<double>(value, "lambda");
        } else if (key == "lambda_sweep") {
            if (value.is_string() && value.get<std::string>() == "robustness-sweep") {
                cfg.study.lambda_sweep.assign(kRobustnessSweep.begin(), kRobustnessSweep.end());
            } else {
                cfg.study.lambda_sweep = get_as<std::vector<double>>(value, "lambda_sweep");
            }
        } else if (key == "max_lag") {
            cfg.study.max_lag = get_as<int>(value, "max_lag");
        } else if (key == "significance_threshold") {
            cfg.study.significance_threshold = get_as<double>(value, "significance_threshold");
        } else if (key == "relaxed_threshold") {
            cfg.study.relaxed_threshold = get_as<double>(value, "relaxed_threshold");
        } else if (key == "selection_criterion") {
            const auto name = get_as<std::string>(value, "selection_criterion");
            const auto c = parse_criterion(name);
            if (!c) throw Error(ErrorCode::ConfigError, "unknown selection_criterion '" + name + "'");
            cfg.study.criterion = *c;
        } else if (key == "mape_convention") {
            if (get_as<std::string>(value, "mape_convention") != kMapeConvention) {
                throw Error(ErrorCode::ConfigError,
                            std::string("mape_convention must be '") + std::string(kMapeConvention) + "'");
            }
        } else if (key == "joint_lags") {
            cfg.study.joint_lags = get_as<bool>(value, "joint_lags");
        } else if (key == "output_directory") {
            cfg.output_directory = get_as<std::string>(value, "output_directory");
        } else {
            throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
        }
    }
    if (cfg.panels.empty()) throw Error(ErrorCode::ConfigError, "config lists no panels");
    cfg.study.validate();
    return cfg;
}

CliConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_json(text.str(), path.parent_path());
}

} // namespace cycleprobe
