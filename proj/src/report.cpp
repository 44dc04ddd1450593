#include "cycleprobe/report.hpp"

#include "cycleprobe/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cycleprobe {

namespace fs = std::filesystem;

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

namespace {

std::string format_lambda(double lambda) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", lambda);
    return buf;
}

// Full precision for figure data so that re-parsed files reproduce the inputs.
std::string figure_value(double v) { return format_fixed(v, 12); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += csv_escape(cells[i]);
    }
    return line + '\n';
}

void write_file(const fs::path& path, const std::string& content) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create directory " + path.parent_path().string());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string window_label(int lag) { return std::to_string(lag) + " Qrts"; }

} // namespace

TextTable::TextTable(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void TextTable::add_row(std::vector<std::string> cells) {
    cells.resize(headers_.size());
    rows_.push_back(std::move(cells));
}

std::string TextTable::render() const {
    std::vector<std::size_t> width(headers_.size());
    for (std::size_t c = 0; c < headers_.size(); ++c) width[c] = headers_[c].size();
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::size_t pad = width[c] - cells[c].size();
            if (c) out += "  ";
            if (c == 0) {
                out += cells[c] + std::string(pad, ' ');
            } else {
                out += std::string(pad, ' ') + cells[c];
            }
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + '\n';
    };
    std::string out = line(headers_);
    std::size_t total = 0;
    for (std::size_t w : width) total += w;
    out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
    for (const auto& row : rows_) out += line(row);
    return out;
}

std::string conventions_preamble(const StudyConfig& config) {
    std::ostringstream s;
    s << "mape_convention: " << kMapeConvention
      << " (MAPE = 100 * mean |e/actual| over quarters with actual != 0)\n";
    s << "significance_threshold: " << format_fixed(config.significance_threshold, 3)
      << " (relaxed: " << format_fixed(config.relaxed_threshold, 3) << ")\n";
    s << "selection_criterion: " << criterion_name(config.criterion) << "\n";
    s << "lambda: " << format_lambda(config.lambda) << "\n";
    s << "spread_lags: " << (config.joint_lags ? "joint (1..h)" : "single (h)") << "\n";
    return s.str();
}

void write_decomposition_files(const CountryReport& country, const fs::path& directory) {
    if (!country.prepared) return;
    const PreparedPanel& p = *country.prepared;
    const fs::path dir = directory / country.country;

    std::string csv = "quarter,log_real_gdp,trend,cycle,below_trend\n";
    for (std::size_t i = 0; i < p.log_real_gdp.size(); ++i) {
        const Quarter q = p.log_real_gdp.start() + static_cast<std::int64_t>(i);
        csv += join_csv({q.to_string(), figure_value(p.log_real_gdp[i]), figure_value(p.decomposition.trend[i]),
                         figure_value(p.decomposition.cycle[i]), std::to_string(p.dummy.values[i])});
    }
    write_file(dir / "decomposition.csv", csv);

    if (!country.sweep) return;
    const LambdaSweep& sweep = *country.sweep;
    std::vector<std::string> header{"quarter"};
    for (double l : country.sweep_lambdas) header.push_back("cycle_lambda_" + format_lambda(l));
    std::string sweep_csv = join_csv(header);
    for (std::size_t i = 0; i < p.log_real_gdp.size(); ++i) {
        std::vector<std::string> row{(p.log_real_gdp.start() + static_cast<std::int64_t>(i)).to_string()};
        for (const HpDecomposition& d : sweep.decompositions) row.push_back(figure_value(d.cycle[i]));
        sweep_csv += join_csv(row);
    }
    write_file(dir / "lambda_sweep.csv", sweep_csv);

    std::vector<std::string> agreement_header{"lambda"};
    for (double l : country.sweep_lambdas) agreement_header.push_back(format_lambda(l));
    std::string agreement_csv = join_csv(agreement_header);
    for (std::size_t i = 0; i < sweep.agreement.size(); ++i) {
        std::vector<std::string> row{format_lambda(country.sweep_lambdas[i])};
        for (double a : sweep.agreement[i]) row.push_back(format_fixed(a, 3));
        agreement_csv += join_csv(row);
    }
    write_file(dir / "lambda_agreement.csv", agreement_csv);
}

void write_summary_table(const StudyReport& report, const fs::path& directory) {
    const std::vector<std::string> header{"country", "variable", "mean",     "median",   "maximum",
                                          "minimum", "std_dev",  "skewness", "kurtosis", "observations"};
    std::string csv = join_csv(header);
    TextTable table(header);
    auto moment = [](const std::optional<double>& v) { return v ? format_fixed(*v, 2) : std::string("NA"); };
    for (const CountryReport& c : report.countries) {
        for (const NamedSummary& s : c.summary) {
            std::vector<std::string> row{c.country,
                                         s.variable,
                                         format_fixed(s.stats.mean, 2),
                                         format_fixed(s.stats.median, 2),
                                         format_fixed(s.stats.maximum, 2),
                                         format_fixed(s.stats.minimum, 2),
                                         format_fixed(s.stats.std_dev, 2),
                                         moment(s.stats.skewness),
                                         moment(s.stats.kurtosis),
                                         std::to_string(s.stats.observations)};
            csv += join_csv(row);
            table.add_row(std::move(row));
        }
    }
    write_file(directory / "table1_summary.csv", csv);
    write_file(directory / "table1_summary.txt",
               "Summary statistics over each country's common sample\n"
               "std_dev uses n-1; skewness and kurtosis (non-excess) use population moments; NA = "
               "undefined for a constant series\n\n" +
                   table.render());
}

void write_selection_table(const StudyReport& report, const fs::path& directory) {
    const std::vector<std::string> header{"country", "spread", "forecast_window", "prob", "rmse",
                                          "mae",     "mape",   "mcfadden_r2",     "selected", "status"};
    std::string csv = join_csv(header);
    TextTable table(header);
    std::string notes;
    for (const CountryReport& c : report.countries) {
        for (const CandidateRow& r : c.grid) {
            const bool selected = c.selection && c.selection->selected_lag == r.spec.spread_lag;
            std::vector<std::string> row{c.country, "1y-3m", window_label(r.spec.spread_lag)};
            if (r.fit) {
                row.push_back(format_fixed(r.coefficient_p_value, 3));
                row.push_back(format_fixed(r.evaluation->rmse, 3));
                row.push_back(format_fixed(r.evaluation->mae, 3));
                row.push_back(format_fixed(r.evaluation->mape, 3));
                row.push_back(format_fixed(r.fit->mcfadden_r2, 3));
                row.push_back(selected ? "*" : "");
                row.push_back("ok");
            } else {
                row.insert(row.end(), {"", "", "", "", "", ""});
                row.push_back(std::string(error_name(r.failure->code)));
            }
            csv += join_csv(row);
            table.add_row(std::move(row));
        }
        if (c.selection) {
            notes += c.country + ": window " + std::to_string(c.selection->selected_lag) + " selected by " +
                     c.selection->selection_rule + "\n";
            if (c.selection->relaxed) {
                notes += c.country + ": WARNING no window significant at " +
                         format_fixed(report.config.significance_threshold, 3) + "; threshold relaxed to " +
                         format_fixed(c.selection->significance_threshold, 3) +
                         ", interpret with caution\n";
            }
        } else if (c.failure && c.failed_stage == "selection") {
            notes += c.country + ": no window selected (" + std::string(error_name(c.failure->code)) + ")\n";
        }
    }
    write_file(directory / "table2_selection.csv", csv);
    write_file(directory / "table2_selection.txt",
               "Forecasting model selection criteria (spread-only probit, one spread lag per window)\n"
               "prob = p-value of the spread coefficient; * marks the selected forecast window\n" +
                   conventions_preamble(report.config) + "\n" + table.render() + "\n" + notes);
}

void write_wald_table(const StudyReport& report, const fs::path& directory) {
    const std::vector<std::string> header{"country",     "forecast_window", "chi2_stat", "chi2_p", "f_stat",
                                          "f_p",         "q",               "denominator_df", "significant"};
    std::string csv = join_csv(header);
    TextTable table(header);
    std::string notes;
    for (const CountryReport& c : report.countries) {
        if (!c.augmented) continue;
        const AugmentedResult& a = *c.augmented;
        std::vector<std::string> row{c.country,
                                     window_label(a.spec.spread_lag),
                                     format_fixed(a.wald.chi2_stat, 3),
                                     format_fixed(a.wald.chi2_p, 3),
                                     format_fixed(a.wald.f_stat, 3),
                                     format_fixed(a.wald.f_p, 3),
                                     std::to_string(a.wald.q),
                                     std::to_string(a.wald.denominator_df),
                                     a.augmentation_significant ? "yes" : "no"};
        csv += join_csv(row);
        table.add_row(std::move(row));
        if (!a.augmentation_significant) {
            notes += c.country + ": augmentation not significant at " +
                     format_fixed(report.config.wald_level, 2) +
                     "; the augmented model is still reported in table 4\n";
        }
    }
    write_file(directory / "table3_wald.csv", csv);
    write_file(directory / "table3_wald.txt",
               "Joint Wald test: unemployment(t-1) and log stock index(t-1) coefficients both zero\n"
               "chi2_stat ~ chi2(q); f_stat = chi2_stat / q ~ F(q, n - k); *_p are probabilities\n\n" +
                   table.render() + (notes.empty() ? "" : "\n" + notes));
}

void write_augmented_table(const StudyReport& report, const fs::path& directory) {
    const std::vector<std::string> header{"country", "spread", "forecast_window", "rmse", "mae", "mape",
                                          "mcfadden_r2", "loglik_spread_only", "loglik_augmented"};
    std::string csv = join_csv(header);
    TextTable table(header);
    for (const CountryReport& c : report.countries) {
        if (!c.augmented) continue;
        const AugmentedResult& a = *c.augmented;
        std::vector<std::string> row{c.country,
                                     "1y-3m",
                                     window_label(a.spec.spread_lag),
                                     format_fixed(a.augmented_evaluation.rmse, 2),
                                     format_fixed(a.augmented_evaluation.mae, 2),
                                     format_fixed(a.augmented_evaluation.mape, 2),
                                     format_fixed(a.augmented.mcfadden_r2, 2),
                                     format_fixed(a.spread_only.log_likelihood, 3),
                                     format_fixed(a.augmented.log_likelihood, 3)};
        csv += join_csv(row);
        table.add_row(std::move(row));
    }
    write_file(directory / "table4_augmented.csv", csv);
    write_file(directory / "table4_augmented.txt",
               "Forecasting criteria with unemployment(t-1) and log stock index(t-1) added\n" +
                   conventions_preamble(report.config) + "\n" + table.render());
}

void write_probability_path(const CountryReport& country, const fs::path& directory) {
    if (!country.prepared || !country.augmented_path || !country.spread_only_path) return;
    const PreparedPanel& p = *country.prepared;
    const QuarterlySeries& aug = *country.augmented_path;
    const QuarterlySeries& base = *country.spread_only_path;
    const QuarterlySeries dummy = p.dummy.as_series();
    std::string csv = "quarter,cycle,below_trend,prob_spread_only,prob_augmented\n";
    for (Quarter q = aug.start(); q <= aug.last(); q = q.successor()) {
        csv += join_csv({q.to_string(), figure_value(p.decomposition.cycle.at(q)),
                         std::to_string(static_cast<int>(dummy.at(q))), figure_value(base.at(q)),
                         figure_value(aug.at(q))});
    }
    write_file(directory / country.country / "probability_path.csv", csv);
}

void write_status(const StudyReport& report, const fs::path& directory) {
    std::string csv = "country,status,stage,error_class,message\n";
    for (const CountryReport& c : report.countries) {
        if (c.failure) {
            csv += join_csv({c.country, "failed", c.failed_stage, std::string(error_name(c.failure->code)),
                             c.failure->message});
        } else {
            csv += join_csv({c.country, "ok", "", "", ""});
        }
    }
    write_file(directory / "status.csv", csv);
}

} // namespace cycleprobe
