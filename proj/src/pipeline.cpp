#include "cycleprobe/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <numeric>

namespace cycleprobe {

std::string_view criterion_name(SelectionCriterion c) noexcept {
    switch (c) {
    case SelectionCriterion::Rmse: return "rmse";
    case SelectionCriterion::Mae: return "mae";
    case SelectionCriterion::Mape: return "mape";
    case SelectionCriterion::McFadden: return "mcfadden";
    }
    return "rmse";
}

std::optional<SelectionCriterion> parse_criterion(std::string_view name) noexcept {
    for (auto c : {SelectionCriterion::Rmse, SelectionCriterion::Mae, SelectionCriterion::Mape,
                   SelectionCriterion::McFadden}) {
        if (criterion_name(c) == name) return c;
    }
    return std::nullopt;
}

void StudyConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
    if (!(lambda > 0.0)) fail("lambda must be positive");
    if (lambda_sweep.empty()) fail("lambda_sweep must not be empty");
    for (double l : lambda_sweep) {
        if (!(l > 0.0)) fail("lambda_sweep values must be positive");
    }
    if (max_lag < 1) fail("max_lag must be >= 1");
    if (!(significance_threshold > 0.0 && significance_threshold <= relaxed_threshold &&
          relaxed_threshold < 1.0)) {
        fail("thresholds must satisfy 0 < significance_threshold <= relaxed_threshold < 1");
    }
    if (min_sample < 1) fail("min_sample must be >= 1");
}

PreparedPanel prepare_panel(const CountryPanel& panel, double lambda) {
    panel.validate();
    CountryPanel restricted = panel.restricted();
    QuarterlySeries gdp = real_log_gdp(restricted.nominal_gdp, restricted.deflator);
    HpDecomposition hp = hp_decompose(gdp, lambda);
    RecessionDummy dummy = below_trend_dummy(hp);
    QuarterlySeries s = spread(restricted.rate_long, restricted.rate_short);
    QuarterlySeries log_stock = log_series(restricted.stock_index);
    return PreparedPanel{std::move(restricted), std::move(gdp),  std::move(hp),
                         std::move(dummy),      std::move(s),    std::move(log_stock)};
}

namespace {

bool augmented(const ModelSpec& spec) { return spec.include_unemployment || spec.include_stock_index; }

std::string lag_name(const char* base, int lag) { return std::string(base) + "_l" + std::to_string(lag); }

} // namespace

QuarterRange estimation_range(const PreparedPanel& prepared, const ModelSpec& spec) {
    if (spec.spread_lag < 1) {
        throw Error(ErrorCode::InvalidArgument, "spread lag must be >= 1");
    }
    const int lost = std::max(spec.spread_lag, augmented(spec) ? 1 : 0);
    const QuarterlySeries& base = prepared.spread;
    if (static_cast<std::size_t>(lost) >= base.size()) {
        throw Error(ErrorCode::LagTooLarge, "lag " + std::to_string(lost) + " exceeds the " +
                                                std::to_string(base.size()) + "-quarter sample");
    }
    return {base.start() + lost, base.last()};
}

DesignMatrix build_design(const PreparedPanel& prepared, const ModelSpec& spec, QuarterRange range) {
    std::vector<QuarterlySeries> regressors;
    std::vector<std::string> names{"const"};
    const int first_lag = spec.joint_lags ? 1 : spec.spread_lag;
    for (int h = first_lag; h <= spec.spread_lag; ++h) {
        regressors.push_back(lag(prepared.spread, h));
        names.push_back(lag_name("spread", h));
    }
    if (spec.include_unemployment) {
        regressors.push_back(lag(prepared.panel.unemployment, 1));
        names.push_back(lag_name("unemployment", 1));
    }
    if (spec.include_stock_index) {
        regressors.push_back(lag(prepared.log_stock_index, 1));
        names.push_back(lag_name("log_stock", 1));
    }

    const QuarterlySeries dummy = prepared.dummy.as_series();
    const auto n = static_cast<Eigen::Index>(range.second - range.first + 1);
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(names.size()));
    std::vector<int> y(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Quarter t = range.first + i;
        x(i, 0) = 1.0;
        for (std::size_t j = 0; j < regressors.size(); ++j) {
            x(i, static_cast<Eigen::Index>(j + 1)) = regressors[j].at(t);
        }
        y[static_cast<std::size_t>(i)] = static_cast<int>(dummy.at(t));
    }
    return DesignMatrix(std::move(x), std::move(names), std::move(y));
}

namespace {

EvaluationReport evaluate_fit(const DesignMatrix& design, const ProbitFit& fit) {
    const Eigen::VectorXd& y = design.response();
    const Eigen::VectorXd& p = fit.fitted_probabilities;
    return evaluate_forecast(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())),
                             std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

double spread_p_value(const ProbitFit& fit, const ModelSpec& spec) {
    if (!spec.joint_lags || spec.spread_lag == 1) return fit.p_values(1);
    std::vector<int> idx(static_cast<std::size_t>(spec.spread_lag));
    std::iota(idx.begin(), idx.end(), 1);
    return wald_test(fit, idx).chi2_p;
}

} // namespace

std::vector<CandidateRow> build_candidate_grid(const PreparedPanel& prepared, const StudyConfig& config,
                                               const std::string& country) {
    const auto sample_at_max = static_cast<long long>(prepared.spread.size()) - config.max_lag;
    if (sample_at_max < config.min_sample) {
        throw Error(ErrorCode::InsufficientSample,
                    "only " + std::to_string(std::max(sample_at_max, 0LL)) +
                        " observations remain at lag " + std::to_string(config.max_lag) + "; need " +
                        std::to_string(config.min_sample));
    }
    std::vector<CandidateRow> rows;
    for (int h = 1; h <= config.max_lag; ++h) {
        CandidateRow row;
        row.spec = ModelSpec{country, h, false, false, prepared.decomposition.lambda, config.joint_lags};
        try {
            row.sample = estimation_range(prepared, row.spec);
            const DesignMatrix design = build_design(prepared, row.spec, row.sample);
            ProbitFit fit = fit_probit(design);
            row.evaluation = evaluate_fit(design, fit);
            row.coefficient_p_value = spread_p_value(fit, row.spec);
            row.fit = std::move(fit);
        } catch (const Error& e) {
            row.failure = Failure{e.code(), e.what()};
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CandidateRow> build_candidate_grid(const CountryPanel& panel, double lambda) {
    StudyConfig config;
    config.lambda = lambda;
    return build_candidate_grid(prepare_panel(panel, lambda), config, panel.country);
}

std::vector<SelectionRow> selection_rows(std::span<const CandidateRow> grid) {
    std::vector<SelectionRow> rows;
    for (const CandidateRow& c : grid) {
        if (!c.fit || !c.evaluation) continue;
        rows.push_back(SelectionRow{c.spec.spread_lag, c.coefficient_p_value, c.evaluation->rmse,
                                    c.evaluation->mae, c.evaluation->mape, c.fit->mcfadden_r2});
    }
    return rows;
}

SelectionReport select_window(std::span<const SelectionRow> rows, double significance_threshold,
                              SelectionCriterion criterion) {
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no candidate models to select from");

    auto score = [criterion](const SelectionRow& r) {
        switch (criterion) {
        case SelectionCriterion::Rmse: return r.rmse;
        case SelectionCriterion::Mae: return r.mae;
        case SelectionCriterion::Mape: return r.mape;
        case SelectionCriterion::McFadden: return -r.mcfadden_r2;
        }
        return r.rmse;
    };

    const SelectionRow* best = nullptr;
    for (const SelectionRow& r : rows) {
        if (!(r.coefficient_p_value <= significance_threshold)) continue;
        if (best == nullptr || score(r) < score(*best) ||
            (score(r) == score(*best) && r.spread_lag < best->spread_lag)) {
            best = &r;
        }
    }
    if (best == nullptr) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", significance_threshold);
        throw Error(ErrorCode::NoSignificantModel,
                    std::string("no spread coefficient significant at p <= ") + buf);
    }

    SelectionReport report;
    report.rows.assign(rows.begin(), rows.end());
    std::sort(report.rows.begin(), report.rows.end(),
              [](const SelectionRow& a, const SelectionRow& b) { return a.spread_lag < b.spread_lag; });
    report.selected_lag = best->spread_lag;
    report.criterion = criterion;
    report.significance_threshold = significance_threshold;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %s among windows with p <= %.3f; ties to shorter window",
                  criterion == SelectionCriterion::McFadden ? "max" : "min",
                  std::string(criterion_name(criterion)).c_str(), significance_threshold);
    report.selection_rule = buf;
    return report;
}

AugmentedResult fit_augmented(const PreparedPanel& prepared, int selected_lag, const StudyConfig& config) {
    AugmentedResult out{};
    out.spec = ModelSpec{prepared.panel.country, selected_lag, true, true,
                         prepared.decomposition.lambda, config.joint_lags};
    out.sample = estimation_range(prepared, out.spec);

    ModelSpec base = out.spec;
    base.include_unemployment = base.include_stock_index = false;

    const DesignMatrix full = build_design(prepared, out.spec, out.sample);
    const DesignMatrix restricted = build_design(prepared, base, out.sample);
    out.augmented = fit_probit(full);
    out.augmented_evaluation = evaluate_fit(full, out.augmented);
    out.spread_only = fit_probit(restricted);
    out.spread_only_evaluation = evaluate_fit(restricted, out.spread_only);

    const int k = static_cast<int>(full.cols());
    const int restricted_idx[] = {k - 2, k - 1};
    out.wald = wald_test(out.augmented, restricted_idx);
    out.augmentation_significant = out.wald.chi2_p <= config.wald_level;
    return out;
}

QuarterlySeries probability_path(const ProbitFit& fit, const PreparedPanel& prepared, const ModelSpec& spec) {
    const QuarterRange range = estimation_range(prepared, spec);
    const DesignMatrix design = build_design(prepared, spec, range);
    if (design.cols() != fit.coefficients.size()) {
        throw Error(ErrorCode::DimensionMismatch, "fit does not match the model specification");
    }
    std::vector<double> p(static_cast<std::size_t>(design.rows()));
    std::vector<double> row(static_cast<std::size_t>(design.cols()));
    for (Eigen::Index i = 0; i < design.rows(); ++i) {
        for (Eigen::Index j = 0; j < design.cols(); ++j) row[static_cast<std::size_t>(j)] = design.observations()(i, j);
        p[static_cast<std::size_t>(i)] = predict_prob(fit, row);
    }
    return QuarterlySeries(range.first, std::move(p));
}

std::vector<NamedSummary> summary_block(const PreparedPanel& prepared) {
    const CountryPanel& p = prepared.panel;
    return {
        {"rate_long_1y", summarize(p.rate_long.values())},
        {"rate_short_3m", summarize(p.rate_short.values())},
        {"spread", summarize(prepared.spread.values())},
        {"unemployment", summarize(p.unemployment.values())},
        {"log_stock_index", summarize(prepared.log_stock_index.values())},
        {"log_real_gdp", summarize(prepared.log_real_gdp.values())},
        {"cycle", summarize(prepared.decomposition.cycle.values())},
    };
}

CountryReport run_country(const CountryPanel& panel, const StudyConfig& config, StudyDepth depth) {
    CountryReport report;
    report.country = panel.country;
    std::string stage;
    try {
        stage = "prepare";
        report.prepared = prepare_panel(panel, config.lambda);
        const PreparedPanel& prepared = *report.prepared;

        stage = "lambda_sweep";
        report.sweep_lambdas = config.lambda_sweep;
        report.sweep = lambda_sweep(prepared.log_real_gdp, config.lambda_sweep);

        stage = "summary";
        report.summary = summary_block(prepared);

        if (depth == StudyDepth::Decomposition) return report;

        stage = "grid";
        report.grid = build_candidate_grid(prepared, config, panel.country);

        stage = "selection";
        const std::vector<SelectionRow> rows = selection_rows(report.grid);
        if (rows.empty()) {
            // every window failed; surface the cause rather than an empty selection
            const Failure& first = *report.grid.front().failure;
            throw Error(first.code, "every forecast window failed to estimate (window 1: " + first.message + ")");
        }
        try {
            report.selection = select_window(rows, config.significance_threshold, config.criterion);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoSignificantModel ||
                config.relaxed_threshold <= config.significance_threshold) {
                throw;
            }
            report.selection = select_window(rows, config.relaxed_threshold, config.criterion);
            report.selection->relaxed = true;
        }
        report.selection->country = panel.country;
        if (depth == StudyDepth::Grid) return report;

        const int h = report.selection->selected_lag;
        const auto selected = std::find_if(report.grid.begin(), report.grid.end(),
                                           [h](const CandidateRow& r) { return r.spec.spread_lag == h; });
        report.spread_only_path = probability_path(*selected->fit, prepared, selected->spec);

        stage = "augmented";
        report.augmented = fit_augmented(prepared, h, config);
        report.augmented_path = probability_path(report.augmented->augmented, prepared, report.augmented->spec);
    } catch (const Error& e) {
        report.failure = Failure{e.code(), e.what()};
        report.failed_stage = stage;
    }
    return report;
}

StudyReport run_full_study(std::span<const CountryPanel> panels, const StudyConfig& config,
                           StudyDepth depth) {
    config.validate();
    if (panels.empty()) throw Error(ErrorCode::EmptyInput, "study needs at least one panel");
    std::vector<std::future<CountryReport>> jobs;
    jobs.reserve(panels.size());
    for (const CountryPanel& panel : panels) {
        jobs.push_back(std::async(std::launch::async, [&panel, &config, depth] { return run_country(panel, config, depth); }));
    }
    StudyReport report{config, {}};
    for (auto& job : jobs) report.countries.push_back(job.get());
    return report;
}

} // namespace cycleprobe
