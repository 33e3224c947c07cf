#pragma once

// Density sweeps: coverage, coverage density mu = lambda * Pc, and potential
// throughput tau = log2(1+T) * mu against a log-spaced lambda grid, with a
// least-squares tail fit of d log(tau) / d log(lambda).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcover/analytic.hpp"
#include "cellcover/scenario.hpp"

namespace cellcover {

struct SweepRow {
    double density = 0.0;
    double coverage = 0.0;
    double coverage_density = 0.0;
    double throughput = 0.0;
};

struct DensitySweep {
    std::vector<double> densities;
    std::vector<SweepRow> rows;
    std::size_t fit_begin = 0;  // [fit_begin, fit_end) over the largest densities
    std::size_t fit_end = 0;
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::domain_error("bad log grid");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    g.back() = hi;
    return g;
}

struct TailFit {
    double slope = 0.0;
    double residual = 0.0;
};

// Least squares of log(y) against log(x) over [begin, end).
inline TailFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                             std::size_t begin, std::size_t end) {
    if (end > x.size() || end > y.size() || end - begin < 2)
        throw std::domain_error("log-slope fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        if (!(y[i] > 0.0))
            throw std::runtime_error("cannot fit scaling exponent: zero throughput in window");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    TailFit fit;
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - fit.slope * sx) / m;
    double rss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double r = std::log(y[i]) - (intercept + fit.slope * std::log(x[i]));
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / m);
    return fit;
}

// Tail window = top 40% of grid points by density; asymptotic statements are
// contaminated by the small-lambda rows otherwise.
inline DensitySweep sweep_density(const PathLossModel& model, double threshold, double noise,
                                  const std::vector<double>& lambda_grid) {
    if (lambda_grid.size() < 8) throw std::domain_error("density sweep needs >= 8 grid points");
    double prev = 0.0;
    for (double l : lambda_grid) {
        if (!(l > prev)) throw std::domain_error("density grid must be positive and increasing");
        prev = l;
    }
    if (!(lambda_grid.back() / lambda_grid.front() >= 1e3 * (1.0 - 1e-9)))
        throw std::domain_error("density sweep should span at least three decades");

    DensitySweep sweep;
    sweep.densities = lambda_grid;
    sweep.rows.resize(lambda_grid.size());
    const double rate = std::log2(1.0 + threshold);
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        NetworkScenario s{lambda_grid[i], noise, model};
        SweepRow row;
        row.density = lambda_grid[i];
        row.coverage = coverage_auto(s, threshold).value;
        row.coverage_density = row.density * row.coverage;
        row.throughput = rate * row.coverage_density;
        sweep.rows[i] = row;
    }

    const std::size_t n = lambda_grid.size();
    sweep.fit_begin = n - std::max<std::size_t>(2, (2 * n) / 5);
    sweep.fit_end = n;
    std::vector<double> tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = sweep.rows[i].throughput;
    const auto fit = fit_log_slope(sweep.densities, tau, sweep.fit_begin, sweep.fit_end);
    sweep.fitted_exponent = fit.slope;
    sweep.fit_residual = fit.residual;
    return sweep;
}

enum class ScalingTag { diverging, bounded, vanishing };

inline const char* to_string(ScalingTag t) {
    switch (t) {
        case ScalingTag::diverging: return "diverging";
        case ScalingTag::bounded: return "bounded";
        default: return "vanishing";
    }
}

struct PhaseTransitionRow {
    double alpha0 = 0.0;
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;
    ScalingTag tag = ScalingTag::bounded;
};

// One sweep per near-field exponent; the tag comes from a sign test on the
// fitted tail slope.
inline std::vector<PhaseTransitionRow> phase_transition_report(
    const std::vector<double>& alpha0_list, double alpha1, double r_c, double threshold,
    const std::vector<double>& lambda_grid) {
    std::vector<PhaseTransitionRow> rows;
    rows.reserve(alpha0_list.size());
    for (double a0 : alpha0_list) {
        auto model = make_dual(a0, alpha1, r_c);
        auto sweep = sweep_density(model, threshold, 0.0, lambda_grid);
        PhaseTransitionRow row;
        row.alpha0 = a0;
        row.fitted_exponent = sweep.fitted_exponent;
        row.fit_residual = sweep.fit_residual;
        if (sweep.fitted_exponent > 0.05)
            row.tag = ScalingTag::diverging;
        else if (sweep.fitted_exponent < -0.05)
            row.tag = ScalingTag::vanishing;
        else
            row.tag = ScalingTag::bounded;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cellcover
