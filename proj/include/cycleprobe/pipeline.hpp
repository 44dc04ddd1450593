#pragma once

#include "cycleprobe/error.hpp"
#include "cycleprobe/forecast_eval.hpp"
#include "cycleprobe/hp_filter.hpp"
#include "cycleprobe/probit.hpp"
#include "cycleprobe/summary_stats.hpp"
#include "cycleprobe/timeseries.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cycleprobe {

enum class SelectionCriterion { Rmse, Mae, Mape, McFadden };

std::string_view criterion_name(SelectionCriterion c) noexcept;
/// Accepts rmse, mae, mape, mcfadden.
std::optional<SelectionCriterion> parse_criterion(std::string_view name) noexcept;

struct StudyConfig {
    double lambda = kQuarterlyLambda;
    std::vector<double> lambda_sweep{kRobustnessSweep.begin(), kRobustnessSweep.end()};
    int max_lag = 6;
    double significance_threshold = 0.01;
    double relaxed_threshold = 0.10;
    SelectionCriterion criterion = SelectionCriterion::Rmse;
    bool joint_lags = false;        // h-th model uses spread lags 1..h jointly
    int min_sample = 20;            // estimation sample at the longest lag
    double wald_level = 0.05;       // augmentation counts as significant when chi2 p <= this

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

struct ModelSpec {
    std::string country;
    int spread_lag = 1;
    bool include_unemployment = false;  // always at t-1
    bool include_stock_index = false;   // log level, always at t-1
    double lambda = kQuarterlyLambda;
    bool joint_lags = false;
};

/// A panel restricted to its common range with the derived series every model needs.
struct PreparedPanel {
    CountryPanel panel;
    QuarterlySeries log_real_gdp;
    HpDecomposition decomposition;
    RecessionDummy dummy;
    QuarterlySeries spread;
    QuarterlySeries log_stock_index;
};

PreparedPanel prepare_panel(const CountryPanel& panel, double lambda);

/// Quarters usable by `spec`: the common range minus the quarters lost to lags.
QuarterRange estimation_range(const PreparedPanel& prepared, const ModelSpec& spec);

/// Dummy on the left, {1, spread lag(s), [u_{t-1}], [ln s_{t-1}]} on the right, over `range`.
DesignMatrix build_design(const PreparedPanel& prepared, const ModelSpec& spec, QuarterRange range);

struct Failure {
    ErrorCode code;
    std::string message;
};

struct CandidateRow {
    ModelSpec spec;
    QuarterRange sample;
    std::optional<ProbitFit> fit;
    std::optional<EvaluationReport> evaluation;
    double coefficient_p_value = 1.0;   // spread coefficient (joint Wald p with joint lags)
    std::optional<Failure> failure;
};

/// One probit per forecast window h = 1..max_lag. Per-window failures are
/// recorded on the row; the grid itself throws only InsufficientSample.
std::vector<CandidateRow> build_candidate_grid(const PreparedPanel& prepared, const StudyConfig& config,
                                               const std::string& country);
std::vector<CandidateRow> build_candidate_grid(const CountryPanel& panel, double lambda);

struct SelectionRow {
    int spread_lag = 0;
    double coefficient_p_value = 1.0;
    double rmse = 0.0;
    double mae = 0.0;
    double mape = 0.0;
    double mcfadden_r2 = 0.0;
};

std::vector<SelectionRow> selection_rows(std::span<const CandidateRow> grid);

struct SelectionReport {
    std::string country;
    std::vector<SelectionRow> rows;   // all candidates, ordered by lag
    int selected_lag = 0;
    SelectionCriterion criterion = SelectionCriterion::Rmse;
    std::string selection_rule;
    double significance_threshold = 0.01;
    bool relaxed = false;             // threshold was widened because nothing passed
};

/// Keeps rows with p <= threshold and picks the best by `criterion`; ties go to the shorter lag.
/// Throws NoSignificantModel when nothing survives the filter.
SelectionReport select_window(std::span<const SelectionRow> rows, double significance_threshold = 0.01,
                              SelectionCriterion criterion = SelectionCriterion::Rmse);

struct AugmentedResult {
    ModelSpec spec;
    QuarterRange sample;
    ProbitFit augmented;
    EvaluationReport augmented_evaluation;
    ProbitFit spread_only;            // refit on the identical sample
    EvaluationReport spread_only_evaluation;
    WaldResult wald;                  // unemployment and stock coefficients jointly zero
    bool augmentation_significant = false;
};

AugmentedResult fit_augmented(const PreparedPanel& prepared, int selected_lag, const StudyConfig& config);

/// In-sample Phi(x'beta) over the model's estimation range.
QuarterlySeries probability_path(const ProbitFit& fit, const PreparedPanel& prepared, const ModelSpec& spec);

struct NamedSummary {
    std::string variable;
    SummaryStatistics stats;
};

std::vector<NamedSummary> summary_block(const PreparedPanel& prepared);

struct CountryReport {
    std::string country;
    std::optional<Failure> failure;          // first stage that stopped this country
    std::string failed_stage;

    std::optional<PreparedPanel> prepared;
    std::vector<double> sweep_lambdas;
    std::optional<LambdaSweep> sweep;
    std::vector<NamedSummary> summary;
    std::vector<CandidateRow> grid;
    std::optional<SelectionReport> selection;
    std::optional<AugmentedResult> augmented;
    std::optional<QuarterlySeries> spread_only_path;
    std::optional<QuarterlySeries> augmented_path;
};

struct StudyReport {
    StudyConfig config;
    std::vector<CountryReport> countries;   // input order
};

/// How far run_country goes: decomposition + sweep + summary, then the
/// spread-only grid and selection, then the augmented model and paths.
enum class StudyDepth { Decomposition, Grid, Full };

/// Per-country experiment. Country failures are recorded, never propagated.
CountryReport run_country(const CountryPanel& panel, const StudyConfig& config,
                          StudyDepth depth = StudyDepth::Full);

/// Runs countries concurrently and merges them in input order.
StudyReport run_full_study(std::span<const CountryPanel> panels, const StudyConfig& config,
                           StudyDepth depth = StudyDepth::Full);

} // namespace cycleprobe
