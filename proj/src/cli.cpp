#include "cycleprobe/cli.hpp"

#include "cycleprobe/error.hpp"
#include "cycleprobe/panel_io.hpp"
#include "cycleprobe/pipeline.hpp"
#include "cycleprobe/report.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace cycleprobe {

namespace {

struct Overrides {
    std::string config_path;
    std::optional<double> lambda;
    std::optional<int> max_lag;
    std::optional<double> threshold;
    std::optional<std::string> criterion;
    std::optional<std::string> out;
    bool joint_lags = false;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON study configuration")->required();
    cmd->add_option("--lambda", o.lambda, "HP smoothing parameter (default 1600)");
    cmd->add_option("--max-lag", o.max_lag, "longest forecast window in quarters (default 6)");
    cmd->add_option("--threshold", o.threshold, "significance threshold for window selection (default 0.01)");
    cmd->add_option("--criterion", o.criterion, "selection criterion: rmse, mae, mape or mcfadden");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_flag("--joint-lags", o.joint_lags, "enter spread lags 1..h jointly in the h-th model");
}

CliConfig resolve_config(const Overrides& o) {
    CliConfig cfg = load_config(o.config_path);
    if (o.lambda) cfg.study.lambda = *o.lambda;
    if (o.max_lag) cfg.study.max_lag = *o.max_lag;
    if (o.threshold) {
        cfg.study.significance_threshold = *o.threshold;
        cfg.study.relaxed_threshold = std::max(cfg.study.relaxed_threshold, *o.threshold);
    }
    if (o.criterion) {
        const auto c = parse_criterion(*o.criterion);
        if (!c) throw Error(ErrorCode::ConfigError, "unknown criterion '" + *o.criterion + "'");
        cfg.study.criterion = *c;
    }
    if (o.out) cfg.output_directory = *o.out;
    if (o.joint_lags) cfg.study.joint_lags = true;
    if (!(cfg.study.lambda > 0.0)) {
        throw Error(ErrorCode::NonPositiveLambda, "lambda must be positive, got " + std::to_string(cfg.study.lambda));
    }
    cfg.study.validate();
    return cfg;
}

void report_error(std::ostream& err, const std::string& scope, ErrorCode code, const std::string& message) {
    err << "error[" << error_name(code) << "]: " << (scope.empty() ? "" : scope + ": ") << message << '\n';
}

// Parses every panel; a country whose file fails keeps its slot with the failure recorded.
struct LoadedPanels {
    std::vector<CountryPanel> panels;
    std::vector<CountryReport> parse_failures;   // country + failure, in config order
    std::vector<bool> loaded;                    // per config entry
};

LoadedPanels load_panels(const CliConfig& cfg) {
    LoadedPanels out;
    for (const PanelSource& src : cfg.panels) {
        try {
            out.panels.push_back(parse_panel_csv(src.path, src.country));
            out.loaded.push_back(true);
        } catch (const Error& e) {
            CountryReport failed;
            failed.country = src.country;
            failed.failure = Failure{e.code(), e.what()};
            failed.failed_stage = "parse";
            out.parse_failures.push_back(std::move(failed));
            out.loaded.push_back(false);
        }
    }
    return out;
}

StudyReport run_configured(const CliConfig& cfg, StudyDepth depth) {
    LoadedPanels loaded = load_panels(cfg);
    StudyReport report{cfg.study, {}};
    StudyReport computed{cfg.study, {}};
    if (!loaded.panels.empty()) computed = run_full_study(loaded.panels, cfg.study, depth);
    std::size_t next_ok = 0, next_failed = 0;
    for (bool ok : loaded.loaded) {
        report.countries.push_back(ok ? std::move(computed.countries[next_ok++])
                                      : std::move(loaded.parse_failures[next_failed++]));
    }
    return report;
}

// Exit status: 0 when every country and every grid row succeeded.
int finish(const StudyReport& report, bool rows_must_succeed, std::ostream& err) {
    int code = 0;
    for (const CountryReport& c : report.countries) {
        if (c.failure) {
            report_error(err, c.country + " (" + c.failed_stage + ")", c.failure->code, c.failure->message);
            if (code == 0) code = static_cast<int>(c.failure->code);
        }
        if (!rows_must_succeed) continue;
        for (const CandidateRow& r : c.grid) {
            if (!r.failure) continue;
            report_error(err, c.country + " window " + std::to_string(r.spec.spread_lag), r.failure->code,
                         r.failure->message);
            if (code == 0) code = static_cast<int>(r.failure->code);
        }
    }
    return code;
}

void print_sweep(const StudyReport& report, std::ostream& out) {
    for (const CountryReport& c : report.countries) {
        if (!c.sweep) continue;
        out << c.country << ": below-trend sign agreement across lambdas";
        for (std::size_t i = 0; i < c.sweep_lambdas.size(); ++i) {
            for (std::size_t j = i + 1; j < c.sweep_lambdas.size(); ++j) {
                out << ' ' << format_fixed(c.sweep_lambdas[i], 0) << '/' << format_fixed(c.sweep_lambdas[j], 0)
                    << '=' << format_fixed(c.sweep->agreement[i][j], 3);
            }
        }
        out << '\n';
    }
}

int cmd_decompose(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const StudyReport report = run_configured(cfg, StudyDepth::Decomposition);
    for (const CountryReport& c : report.countries) write_decomposition_files(c, cfg.output_directory);
    print_sweep(report, out);
    return finish(report, false, err);
}

int cmd_summary(const CliConfig& cfg, std::ostream&, std::ostream& err) {
    const StudyReport report = run_configured(cfg, StudyDepth::Decomposition);
    write_summary_table(report, cfg.output_directory);
    return finish(report, false, err);
}

int cmd_grid(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const StudyReport report = run_configured(cfg, StudyDepth::Grid);
    write_selection_table(report, cfg.output_directory);
    for (const CountryReport& c : report.countries) {
        if (c.selection) {
            out << c.country << ": selected window " << c.selection->selected_lag << " (p <= "
                << format_fixed(c.selection->significance_threshold, 3)
                << (c.selection->relaxed ? ", relaxed" : "") << ")\n";
        }
    }
    return finish(report, true, err);
}

int cmd_study(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const StudyReport report = run_configured(cfg, StudyDepth::Full);
    for (const CountryReport& c : report.countries) {
        write_decomposition_files(c, cfg.output_directory);
        write_probability_path(c, cfg.output_directory);
    }
    write_summary_table(report, cfg.output_directory);
    write_selection_table(report, cfg.output_directory);
    write_wald_table(report, cfg.output_directory);
    write_augmented_table(report, cfg.output_directory);
    write_status(report, cfg.output_directory);
    print_sweep(report, out);
    for (const CountryReport& c : report.countries) {
        if (!c.augmented) continue;
        out << c.country << ": window " << c.augmented->spec.spread_lag << ", McFadden R2 "
            << format_fixed(c.augmented->spread_only.mcfadden_r2, 3) << " -> "
            << format_fixed(c.augmented->augmented.mcfadden_r2, 3) << ", Wald chi2 p "
            << format_fixed(c.augmented->wald.chi2_p, 3) << (c.selection->relaxed ? " [relaxed threshold]" : "")
            << '\n';
    }
    return finish(report, false, err);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Below-trend GDP probabilities from the yield spread", "cycleprobe"};
    app.require_subcommand(1);
    Overrides o;
    CLI::App* decompose = app.add_subcommand("decompose", "HP trend/cycle split and lambda sweep per country");
    CLI::App* grid = app.add_subcommand("grid", "spread-only probit for every forecast window, with selection");
    CLI::App* study = app.add_subcommand("study", "full experiment: tables 1-4 and probability paths");
    CLI::App* summary = app.add_subcommand("summary", "descriptive statistics of the inputs");
    for (CLI::App* cmd : {decompose, grid, study, summary}) add_common_options(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error[Usage]: " << e.what() << '\n';
        return 1;
    }

    try {
        const CliConfig cfg = resolve_config(o);
        out << conventions_preamble(cfg.study);
        if (decompose->parsed()) return cmd_decompose(cfg, out, err);
        if (grid->parsed()) return cmd_grid(cfg, out, err);
        if (study->parsed()) return cmd_study(cfg, out, err);
        return cmd_summary(cfg, out, err);
    } catch (const Error& e) {
        report_error(err, "", e.code(), e.what());
        return static_cast<int>(e.code());
    }
}

} // namespace cycleprobe
