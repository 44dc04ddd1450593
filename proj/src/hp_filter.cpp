#include "cycleprobe/hp_filter.hpp"

#include "cycleprobe/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cycleprobe {

namespace {

// Diagonals of the symmetric pentadiagonal matrix I + lambda D'D.
struct Pentadiagonal {
    std::vector<double> main;   // A(i, i)
    std::vector<double> first;  // A(i, i + 1)
    std::vector<double> second; // A(i, i + 2)
};

Pentadiagonal hp_system(std::size_t n, double lambda) {
    Pentadiagonal a{std::vector<double>(n, 1.0), std::vector<double>(n - 1, 0.0),
                    std::vector<double>(n - 2, 0.0)};
    // Accumulate lambda * r r' for every second-difference row r = (1, -2, 1) at i..i+2.
    constexpr double row[3] = {1.0, -2.0, 1.0};
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t p = 0; p < 3; ++p) {
            a.main[i + p] += lambda * row[p] * row[p];
            if (p + 1 < 3) a.first[i + p] += lambda * row[p] * row[p + 1];
        }
        a.second[i] += lambda * row[0] * row[2];
    }
    return a;
}

// A = L D L' with L unit lower triangular of bandwidth 2.
class BandedLdlt {
public:
    explicit BandedLdlt(const Pentadiagonal& a) {
        const std::size_t n = a.main.size();
        d_.resize(n);
        l1_.assign(n, 0.0);
        l2_.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double di = a.main[i];
            if (i >= 1) di -= l1_[i - 1] * l1_[i - 1] * d_[i - 1];
            if (i >= 2) di -= l2_[i - 2] * l2_[i - 2] * d_[i - 2];
            if (!(di > 0.0) || !std::isfinite(di)) {
                throw Error(ErrorCode::InvalidArgument,
                            "HP system factorisation failed at row " + std::to_string(i));
            }
            d_[i] = di;
            if (i + 1 < n) {
                double off = a.first[i];
                if (i >= 1) off -= l2_[i - 1] * d_[i - 1] * l1_[i - 1];
                l1_[i] = off / di;
            }
            if (i + 2 < n) l2_[i] = a.second[i] / di;
        }
    }

    void solve_in_place(std::vector<double>& x) const {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= 1) x[i] -= l1_[i - 1] * x[i - 1];
            if (i >= 2) x[i] -= l2_[i - 2] * x[i - 2];
        }
        for (std::size_t i = 0; i < n; ++i) x[i] /= d_[i];
        for (std::size_t i = n; i-- > 0;) {
            if (i + 1 < n) x[i] -= l1_[i] * x[i + 1];
            if (i + 2 < n) x[i] -= l2_[i] * x[i + 2];
        }
    }

private:
    std::vector<double> d_, l1_, l2_;
};

} // namespace

std::vector<double> hp_trend(std::span<const double> y, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::NonPositiveLambda,
                    "HP lambda must be positive and finite, got " + std::to_string(lambda));
    }
    if (y.size() < 4) {
        throw Error(ErrorCode::SeriesTooShort,
                    "HP filter needs at least 4 observations, got " + std::to_string(y.size()));
    }
    const std::size_t n = y.size();
    const Pentadiagonal a = hp_system(n, lambda);
    const BandedLdlt ldlt(a);

    std::vector<double> trend(y.begin(), y.end());
    ldlt.solve_in_place(trend);

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double r = static_cast<long double>(y[i]) -
                        static_cast<long double>(a.main[i]) * trend[i];
        if (i >= 1) r -= static_cast<long double>(a.first[i - 1]) * trend[i - 1];
        if (i + 1 < n) r -= static_cast<long double>(a.first[i]) * trend[i + 1];
        if (i >= 2) r -= static_cast<long double>(a.second[i - 2]) * trend[i - 2];
        if (i + 2 < n) r -= static_cast<long double>(a.second[i]) * trend[i + 2];
        residual[i] = static_cast<double>(r);
    }
    ldlt.solve_in_place(residual);
    for (std::size_t i = 0; i < n; ++i) trend[i] += residual[i];
    return trend;
}

HpDecomposition hp_decompose(const QuarterlySeries& series, double lambda) {
    auto y = series.values();
    std::vector<double> trend = hp_trend(y, lambda);
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    const double floor = 1e-12 * scale;

    std::vector<double> cycle(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        cycle[i] = y[i] - trend[i];
        if (std::abs(cycle[i]) <= floor) {
            cycle[i] = 0.0;
            trend[i] = y[i];
        }
    }
    return HpDecomposition{lambda, QuarterlySeries(series.start(), std::move(trend)),
                           QuarterlySeries(series.start(), std::move(cycle))};
}

double sign_agreement(const QuarterlySeries& a, const QuarterlySeries& b) {
    if (a.start() != b.start() || a.size() != b.size()) {
        throw Error(ErrorCode::MisalignedSeries, "sign agreement needs identically ranged cycles");
    }
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] < 0.0) == (b[i] < 0.0)) ++same;
    }
    return static_cast<double>(same) / static_cast<double>(a.size());
}

LambdaSweep lambda_sweep(const QuarterlySeries& series, std::span<const double> lambdas) {
    LambdaSweep sweep;
    sweep.decompositions.reserve(lambdas.size());
    for (double lambda : lambdas) sweep.decompositions.push_back(hp_decompose(series, lambda));

    const std::size_t m = lambdas.size();
    sweep.agreement.assign(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double s = sign_agreement(sweep.decompositions[i].cycle, sweep.decompositions[j].cycle);
            sweep.agreement[i][j] = sweep.agreement[j][i] = s;
        }
    }
    return sweep;
}

bool RecessionDummy::has_both_classes() const noexcept {
    bool zero = false, one = false;
    for (int v : values) (v ? one : zero) = true;
    return zero && one;
}

QuarterlySeries RecessionDummy::as_series() const {
    return QuarterlySeries(start, std::vector<double>(values.begin(), values.end()));
}

RecessionDummy below_trend_dummy(const HpDecomposition& decomposition) {
    const QuarterlySeries& cycle = decomposition.cycle;
    RecessionDummy dummy{cycle.start(), std::vector<int>(cycle.size())};
    for (std::size_t i = 0; i < cycle.size(); ++i) dummy.values[i] = cycle[i] < 0.0 ? 1 : 0;
    return dummy;
}

} // namespace cycleprobe
