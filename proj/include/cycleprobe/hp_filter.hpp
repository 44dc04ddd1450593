#pragma once

#include "cycleprobe/timeseries.hpp"

#include <array>
#include <span>
#include <vector>

namespace cycleprobe {

/// Standard smoothing parameter for quarterly data.
inline constexpr double kQuarterlyLambda = 1600.0;

/// The robustness sweep ("robustness-sweep" preset): 1000, 1600, 2200.
inline constexpr std::array<double, 3> kRobustnessSweep{1000.0, 1600.0, 2200.0};

struct HpDecomposition {
    double lambda;
    QuarterlySeries trend;
    QuarterlySeries cycle;
};

/// 1 where output sits below trend (cycle strictly negative), else 0.
struct RecessionDummy {
    Quarter start;
    std::vector<int> values;

    std::size_t size() const noexcept { return values.size(); }
    bool has_both_classes() const noexcept;
    /// The dummy as a 0/1 series, so it can be sliced and aligned like any other series.
    QuarterlySeries as_series() const;
};

/**
 * Trend that minimises sum (y - tau)^2 + lambda * sum (second difference of tau)^2.
 *
 * Solves (I + lambda D'D) tau = y with an LDL' factorisation of the
 * pentadiagonal system in O(T), followed by one step of iterative refinement
 * with the residual accumulated in extended precision. Requires T >= 4 and
 * lambda > 0.
 */
std::vector<double> hp_trend(std::span<const double> y, double lambda);

/// Trend/cycle split of `series`. Cycle entries within round-off of zero
/// (|c| <= 1e-12 max|y|) are stored as exact zeros and the trend absorbs them.
HpDecomposition hp_decompose(const QuarterlySeries& series, double lambda = kQuarterlyLambda);

/// Fraction of quarters on which two equally-ranged cycles agree on being below trend.
double sign_agreement(const QuarterlySeries& a, const QuarterlySeries& b);

struct LambdaSweep {
    std::vector<HpDecomposition> decompositions;   // input order
    std::vector<std::vector<double>> agreement;    // pairwise sign agreement, symmetric
};

LambdaSweep lambda_sweep(const QuarterlySeries& series, std::span<const double> lambdas);

RecessionDummy below_trend_dummy(const HpDecomposition& decomposition);

} // namespace cycleprobe
