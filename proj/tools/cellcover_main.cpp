// cellcover: coverage probability and throughput scaling for Poisson
// downlink networks under piecewise power-law path loss.
//
// Exit codes: 0 success, 1 validation-suite failure, 2 usage or domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cellcover/analytic.hpp"
#include "cellcover/montecarlo.hpp"
#include "cellcover/report.hpp"
#include "cellcover/scenario_io.hpp"
#include "cellcover/validate.hpp"

namespace {

using namespace cellcover;

struct CommonOpts {
    std::string scenario_path;
    std::string out_path;
    std::optional<double> t_db;
    std::optional<double> t_linear;
    std::optional<double> density;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_threshold) {
    cmd->add_option("--scenario", opts.scenario_path, "scenario file (.toml-style or .json)")
        ->required();
    cmd->add_option("--out", opts.out_path, "output path (default: standard output)");
    cmd->add_option("--density", opts.density, "override the scenario's BS density");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trial count override");
    cmd->add_option("--seed", opts.seed, "Monte Carlo seed override");
    cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware)");
    if (needs_threshold) {
        auto* db = cmd->add_option("--T-db", opts.t_db, "threshold in dB");
        auto* lin = cmd->add_option("--T-linear", opts.t_linear, "threshold, linear scale");
        db->excludes(lin);
        lin->excludes(db);
    }
}

ScenarioFile load(const CommonOpts& opts) {
    auto file = load_scenario(opts.scenario_path);
    if (opts.density) {
        file.scenario.density = *opts.density;
        file.scenario.validate();
    }
    if (opts.trials) file.sim.trials = *opts.trials;
    if (opts.seed) file.sim.seed = *opts.seed;
    file.sim.threads = opts.threads;
    return file;
}

double threshold_of(const CommonOpts& opts) {
    if (opts.t_linear) {
        if (!(*opts.t_linear > 0.0)) throw std::domain_error("--T-linear must be positive");
        return *opts.t_linear;
    }
    return db_to_linear(opts.t_db.value_or(0.0));
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::domain_error("cannot open output file: " + opts.out_path);
    out << text;
}

int cmd_coverage(const CommonOpts& opts, const std::string& metric_name,
                 const std::string& method) {
    auto file = load(opts);
    const auto& s = file.scenario;
    const double t = threshold_of(opts);
    const Metric metric = metric_from_string(metric_name);

    auto for_metric = [&](const NetworkScenario& base) {
        NetworkScenario sc = base;
        if (metric == Metric::sir) sc.noise = 0.0;
        return sc;
    };

    CoverageResult r;
    if (method == "auto") {
        r = coverage_metric(s, t, metric);
    } else if (method == "general") {
        r = coverage_general(for_metric(s), t);
    } else if (method == "dual") {
        r = coverage_dual(for_metric(s), t);
    } else if (method == "two-ray") {
        r = coverage_tworay(for_metric(s), t);
    } else if (method == "multislope") {
        r = coverage_multislope(for_metric(s), t);
    } else if (method == "snr") {
        r = coverage_snr(s, t);
    } else if (method == "snr-closed") {
        r = coverage_snr_tworay(s, t);
    } else if (method == "lower-bound") {
        r = coverage_sinr_lower_bound_tworay(s, t);
    } else if (method == "mc") {
        auto est = estimate_ccdf(s, file.sim, {t}, metric);
        r.value = est.estimates[0];
        r.metric = metric;
        r.method = Method::monte_carlo;
        r.threshold = t;
        r.error_estimate = est.ci_halfwidths[0];
    } else {
        throw std::domain_error("unknown method: " + method);
    }

    char line[192];
    std::snprintf(line, sizeof line,
                  "value=%.10g method=%s metric=%s threshold_db=%.6g error_estimate=%.3g\n",
                  r.value, to_string(r.method), to_string(r.metric),
                  linear_to_db(r.threshold), r.error_estimate);
    emit(opts, line);
    return 0;
}

int cmd_ccdf(const CommonOpts& opts, const std::string& metric_name, bool with_mc,
             std::optional<double> min_db, std::optional<double> max_db,
             std::optional<int> steps) {
    auto file = load(opts);
    ThresholdSpec spec = file.thresholds;
    if (min_db || max_db || steps) {
        spec.from_grid = true;
        if (min_db) spec.min_db = *min_db;
        if (max_db) spec.max_db = *max_db;
        if (steps) spec.steps = *steps;
    }
    const auto grid = spec.linear_grid();
    emit(opts,
         ccdf_csv(file.scenario, grid, metric_from_string(metric_name), with_mc, file.sim));
    return 0;
}

int cmd_sweep(const CommonOpts& opts, double lambda_min, double lambda_max, int steps) {
    auto file = load(opts);
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || steps < 2)
        throw std::domain_error(
            "sweep needs 0 < --lambda-min < --lambda-max and --lambda-steps >= 2");
    const auto grid = log_grid(lambda_min, lambda_max, static_cast<std::size_t>(steps));
    emit(opts, sweep_csv(file.scenario, threshold_of(opts), grid));
    return 0;
}

int cmd_validate(const std::string& suite, std::uint64_t seed, unsigned threads,
                 const std::string& out_path) {
    auto rows = run_validate_suite(suite, seed, threads);
    const auto report = validate_report(rows);
    if (out_path.empty()) {
        std::fputs(report.c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::domain_error("cannot open output file: " + out_path);
        out << report;
    }
    for (const auto& r : rows)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage probability and potential throughput for Poisson cellular "
                 "networks under multi-slope path loss"};
    app.require_subcommand(1);

    CommonOpts cov_opts, ccdf_opts, sweep_opts;
    std::string cov_metric = "sinr", cov_method = "auto";
    auto* cov = app.add_subcommand("coverage", "evaluate a single coverage probability");
    add_common(cov, cov_opts, true);
    cov->add_option("--metric", cov_metric, "sir | snr | sinr")
        ->check(CLI::IsMember({"sir", "snr", "sinr"}));
    cov->add_option("--method", cov_method,
                    "auto | general | dual | two-ray | multislope | snr | snr-closed | "
                    "lower-bound | mc");

    std::string ccdf_metric = "sinr";
    bool with_mc = false;
    std::optional<double> min_db, max_db;
    std::optional<int> steps;
    auto* ccdf = app.add_subcommand("ccdf", "coverage ccdf over a threshold grid (CSV)");
    add_common(ccdf, ccdf_opts, false);
    ccdf->add_option("--metric", ccdf_metric, "sir | snr | sinr")
        ->check(CLI::IsMember({"sir", "snr", "sinr"}));
    ccdf->add_flag("--with-mc", with_mc, "add Monte Carlo estimate and CI columns");
    ccdf->add_option("--min-db", min_db, "override threshold grid start (dB)");
    ccdf->add_option("--max-db", max_db, "override threshold grid end (dB)");
    ccdf->add_option("--steps", steps, "override threshold grid size");

    double lambda_min = 0.0, lambda_max = 0.0;
    int lambda_steps = 13;
    auto* sweep =
        app.add_subcommand("sweep", "density sweep of coverage and throughput (CSV)");
    add_common(sweep, sweep_opts, true);
    sweep->add_option("--lambda-min", lambda_min, "smallest density")->required();
    sweep->add_option("--lambda-max", lambda_max, "largest density")->required();
    sweep->add_option("--lambda-steps", lambda_steps, "log-spaced grid size");

    std::string suite = "all";
    std::uint64_t val_seed = 1;
    unsigned val_threads = 0;
    std::string val_out;
    auto* val = app.add_subcommand("validate", "run cross-module property suites");
    val->add_option("suite", suite, "suite name or 'all'");
    val->add_option("--seed", val_seed, "seed for randomized grids and Monte Carlo");
    val->add_option("--threads", val_threads, "worker threads (0 = hardware)");
    val->add_option("--out", val_out, "output path (default: standard output)");

    try {
        app.parse(argc, argv);
        if (cov->parsed()) return cmd_coverage(cov_opts, cov_metric, cov_method);
        if (ccdf->parsed())
            return cmd_ccdf(ccdf_opts, ccdf_metric, with_mc, min_db, max_db, steps);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts, lambda_min, lambda_max, lambda_steps);
        if (val->parsed()) return cmd_validate(suite, val_seed, val_threads, val_out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
