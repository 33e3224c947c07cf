#pragma once

// CSV emission for the CLI. Output is byte-stable for fixed inputs and seed:
// numbers are formatted with snprintf in the C locale and Monte Carlo columns
// come from the schedule-independent estimator.

#include <cstdio>
#include <string>
#include <vector>

#include "cellcover/analytic.hpp"
#include "cellcover/montecarlo.hpp"
#include "cellcover/scaling.hpp"
#include "cellcover/scenario.hpp"

namespace cellcover {

namespace detail_report {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline bool two_ray_with_noise(const NetworkScenario& s) {
    return s.pathloss.segments() == 2 && s.pathloss.exponent(0) == 2.0 &&
           s.pathloss.exponent(1) == 4.0 && s.noise > 0.0;
}

}  // namespace detail_report

// columns: threshold_db, analytic, lower_bound?, mc_estimate?, mc_ci?
inline std::string ccdf_csv(const NetworkScenario& s, const std::vector<double>& thresholds,
                            Metric metric, bool with_mc, const SimConfig& sim) {
    using detail_report::fmt;
    const bool with_bound = metric == Metric::sinr && detail_report::two_ray_with_noise(s);
    std::string out = "threshold_db,analytic";
    if (with_bound) out += ",lower_bound";
    if (with_mc) out += ",mc_estimate,mc_ci";
    out += "\n";

    EmpiricalCcdf mc;
    if (with_mc) mc = estimate_ccdf(s, sim, thresholds, metric);
    auto curve = ccdf_curve(s, thresholds, metric);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        out += fmt(linear_to_db(thresholds[i]));
        out += ',';
        out += fmt(curve.points[i].value);
        if (with_bound) {
            out += ',';
            out += fmt(coverage_sinr_lower_bound_tworay(s, thresholds[i]).value);
        }
        if (with_mc) {
            out += ',';
            out += fmt(mc.estimates[i]);
            out += ',';
            out += fmt(mc.ci_halfwidths[i]);
        }
        out += '\n';
    }
    out += "# metric=" + std::string(to_string(metric));
    out += " method=" + std::string(to_string(curve.points.empty()
                                                  ? Method::general_integral
                                                  : curve.points.front().method));
    if (with_mc) {
        out += " trials=" + std::to_string(sim.trials);
        out += " seed=" + std::to_string(sim.seed);
        out += " confidence=" + fmt(sim.confidence);
    }
    out += "\n";
    return out;
}

// columns: lambda, coverage_sir, coverage_snr, coverage_sinr, mu, tau; one
// trailing comment with the fitted tail exponent of tau.
inline std::string sweep_csv(const NetworkScenario& base, double threshold,
                             const std::vector<double>& lambda_grid) {
    using detail_report::fmt;
    std::string out = "lambda,coverage_sir,coverage_snr,coverage_sinr,mu,tau\n";
    const double rate = std::log2(1.0 + threshold);
    std::vector<double> tau(lambda_grid.size());
    double prev = 0.0;
    for (double l : lambda_grid) {
        if (!(l > prev)) throw std::domain_error("lambda grid must be positive and increasing");
        prev = l;
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        NetworkScenario s = base;
        s.density = lambda_grid[i];
        const double sir = coverage_metric(s, threshold, Metric::sir).value;
        const double snr = coverage_metric(s, threshold, Metric::snr).value;
        const double sinr = s.noise > 0.0 ? coverage_auto(s, threshold).value : sir;
        const double mu = s.density * sinr;
        tau[i] = rate * mu;
        out += fmt(lambda_grid[i]);
        out += ',';
        out += fmt(sir);
        out += ',';
        out += fmt(snr);
        out += ',';
        out += fmt(sinr);
        out += ',';
        out += fmt(mu);
        out += ',';
        out += fmt(tau[i]);
        out += '\n';
    }
    const std::size_t n = lambda_grid.size();
    if (n >= 8 && lambda_grid.back() / lambda_grid.front() >= 1e3 * (1.0 - 1e-9)) {
        const std::size_t begin = n - std::max<std::size_t>(2, (2 * n) / 5);
        const auto fit = fit_log_slope(lambda_grid, tau, begin, n);
        out += "# fitted_exponent=" + fmt(fit.slope) + " fit_residual=" + fmt(fit.residual) +
               " window_lambda=[" + fmt(lambda_grid[begin]) + "," + fmt(lambda_grid[n - 1]) +
               "]\n";
    } else {
        out += "# fitted_exponent=nan (grid too small: need >= 8 points over >= 3 decades)\n";
    }
    return out;
}

}  // namespace cellcover
