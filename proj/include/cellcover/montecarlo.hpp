#pragma once

// Direct simulation of the marked Poisson network: BS count from a Poisson
// draw over a finite window, area-uniform squared distances, iid fading
// marks, strongest-path-loss association. Every random quantity in trial k
// derives from a counter-based stream seeded by (seed, k), so estimates are
// bit-identical regardless of how trials are scheduled across threads.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cellcover/scenario.hpp"
#include "cellcover/specfun.hpp"

namespace cellcover {

enum class FadingModel { rayleigh_unit_mean, lognormal, none };

struct SimConfig {
    std::uint64_t trials = 100000;
    double window_radius = 0.0;  // 0 = auto-size from the truncation bound
    std::uint64_t seed = 1;
    FadingModel fading = FadingModel::rayleigh_unit_mean;
    double lognormal_sigma_db = 8.0;
    double confidence = 0.99;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct TrialMetrics {
    double sir;
    double snr;
    double sinr;

    double get(Metric m) const {
        switch (m) {
            case Metric::sir: return sir;
            case Metric::snr: return snr;
            default: return sinr;
        }
    }
};

struct EmpiricalCcdf {
    std::vector<double> thresholds;
    std::vector<double> estimates;      // raw fractions
    std::vector<double> ci_halfwidths;  // half of the Wilson interval width
    std::vector<std::uint64_t> counts;
    std::uint64_t trials_used = 0;
    double confidence = 0.99;

    // Wilson score bounds; the interval is not centered on the raw fraction.
    double ci_lo(std::size_t i) const { return wilson(i).first; }
    double ci_hi(std::size_t i) const { return wilson(i).second; }
    bool contains(std::size_t i, double value) const {
        auto [lo, hi] = wilson(i);
        return value >= lo && value <= hi;
    }

  private:
    std::pair<double, double> wilson(std::size_t i) const {
        const double z = specfun::normal_quantile(0.5 + confidence / 2.0);
        const double n = static_cast<double>(trials_used);
        const double p = estimates[i];
        const double denom = 1.0 + z * z / n;
        const double center = (p + z * z / (2.0 * n)) / denom;
        const double hw = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
        return {std::max(0.0, center - hw), std::min(1.0, center + hw)};
    }
};

namespace rng {

// splitmix64 over a counter; stateless across trials, sequential within one.
struct Stream {
    std::uint64_t state;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    Stream(std::uint64_t seed, std::uint64_t counter)
        : state(mix(seed ^ 0x8f1bb5f2a7915beeULL) ^ mix(counter * 0xd1342543de82ef95ULL + 1)) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on (0,1), never exactly 0 or 1
    double u01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double exponential() { return -std::log(u01()); }

    double normal() {
        // polar Box-Muller; the spare is dropped to keep the stream simple
        for (;;) {
            const double a = 2.0 * u01() - 1.0;
            const double b = 2.0 * u01() - 1.0;
            const double s = a * a + b * b;
            if (s > 0.0 && s < 1.0) return a * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 10.0) {
            const double limit = std::exp(-mean);
            std::uint64_t k = 0;
            double prod = u01();
            while (prod > limit) {
                ++k;
                prod *= u01();
            }
            return k;
        }
        // Hormann's PTRS transformed rejection, exact for mean >= 10.
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = u01() - 0.5;
            const double v = u01();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
                -mean + kf * loglam - std::lgamma(kf + 1.0))
                return static_cast<std::uint64_t>(kf);
        }
    }
};

}  // namespace rng

// int_r^inf l(t) t dt over the model segments; needs last exponent > 2.
inline double pathloss_tail_moment(const PathLossModel& m, double r) {
    if (!(m.last_exponent() > 2.0))
        throw std::domain_error("interference tail requires last path loss exponent > 2");
    const auto& brk = m.breakpoints();
    const auto& K = m.constants();
    double total = 0.0;
    for (std::size_t i = 0; i < m.segments(); ++i) {
        const double lo = std::max(r, i == 0 ? 0.0 : brk[i - 1]);
        const bool last = i + 1 == m.segments();
        const double hi = last ? std::numeric_limits<double>::infinity() : brk[i];
        if (!(hi > lo)) continue;
        const double a = m.exponent(i);
        if (last) {
            total += K[i] * std::pow(lo, 2.0 - a) / (a - 2.0);
        } else if (a == 2.0) {
            total += K[i] * std::log(hi / lo);
        } else {
            total += K[i] * (std::pow(hi, 2.0 - a) - std::pow(lo, 2.0 - a)) / (2.0 - a);
        }
    }
    return total;
}

// Expected interference ignored by truncating the window at window_radius.
// Beyond the last breakpoint this is 2 pi lambda K R^(2-a) / (a-2).
inline double truncation_bias_bound(const NetworkScenario& s, double window_radius) {
    s.validate();
    if (!(window_radius > 0.0)) throw std::domain_error("window radius must be > 0");
    return 2.0 * std::numbers::pi * s.density * pathloss_tail_moment(s.pathloss, window_radius);
}

inline double window_floor(const NetworkScenario& s) {
    double floor_r = 1.0 / std::sqrt(s.density * std::numbers::pi);
    for (double b : s.pathloss.breakpoints()) floor_r = std::max(floor_r, b);
    return 10.0 * floor_r;
}

// Window sizing. Floor of 10x the largest breakpoint (and of the mean
// nearest-BS scale); on top of that, the truncated interference must stay
// below 1e-3 of noise-plus-typical-interference, where "typical" is the mean
// interference from beyond the median nearest-BS distance. An explicit
// window is taken as given here; the estimation entry points reject explicit
// windows below the floor.
inline double resolve_window_radius(const NetworkScenario& s, const SimConfig& cfg) {
    s.validate();
    if (cfg.window_radius > 0.0) return cfg.window_radius;
    const double r_median = 0.5 / std::sqrt(s.density);
    const double typical =
        2.0 * std::numbers::pi * s.density * pathloss_tail_moment(s.pathloss, r_median);
    const double eps = 1e-3 * (s.noise + typical);
    const double alpha = s.pathloss.last_exponent();
    const double k_last = s.pathloss.last_constant();
    const double coeff = 2.0 * std::numbers::pi * s.density * k_last / (alpha - 2.0);
    double r_bias = std::pow(coeff / eps, 1.0 / (alpha - 2.0));
    const double last_brk =
        s.pathloss.breakpoints().empty() ? 0.0 : s.pathloss.breakpoints().back();
    r_bias = std::max(r_bias, last_brk);  // the closed-form inversion assumes the far band
    return std::max(window_floor(s), r_bias);
}

// One trial of the marked PPP in a disk around the typical user. Association
// is argmax of path loss, not argmin of distance, so unordered models stay
// simulable. Interference-free trials return +inf SIR; empty windows count
// as non-covered with the SNR = 0 convention.
inline TrialMetrics sample_trial(const NetworkScenario& s, const SimConfig& cfg,
                                 std::uint64_t trial_index) {
    const double radius = resolve_window_radius(s, cfg);
    rng::Stream stream(cfg.seed, trial_index);
    const double r_sq = radius * radius;
    const double mean = s.density * std::numbers::pi * r_sq;
    const std::uint64_t n = stream.poisson(mean);
    if (n == 0) return {0.0, 0.0, 0.0};

    const double ln_sigma =
        cfg.fading == FadingModel::lognormal ? cfg.lognormal_sigma_db * std::numbers::ln10 / 10.0
                                             : 0.0;
    double best_gain = -1.0;
    double best_power = 0.0;
    double interference = 0.0;
    const auto& model = s.pathloss;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double d_sq = r_sq * stream.u01();  // squared distance is area-uniform
        const double gain = model.evaluate_sq(d_sq);
        double h = 1.0;
        switch (cfg.fading) {
            case FadingModel::rayleigh_unit_mean: h = stream.exponential(); break;
            case FadingModel::lognormal:
                h = std::exp(ln_sigma * stream.normal() - 0.5 * ln_sigma * ln_sigma);
                break;
            case FadingModel::none: break;
        }
        const double power = h * gain;
        if (gain > best_gain) {
            interference += best_power;
            best_gain = gain;
            best_power = power;
        } else {
            interference += power;
        }
    }
    const double inf = std::numeric_limits<double>::infinity();
    TrialMetrics t;
    t.snr = s.noise > 0.0 ? best_power / s.noise : inf;
    t.sir = interference > 0.0 ? best_power / interference : inf;
    const double denom = interference + s.noise;
    t.sinr = denom > 0.0 ? best_power / denom : inf;
    return t;
}

namespace detail_mc {

template <class PerTrial>
void run_trials(std::uint64_t trials, unsigned threads, PerTrial&& body) {
    const std::uint64_t chunk = 4096;
    const std::uint64_t n_chunks = (trials + chunk - 1) / chunk;
    unsigned hw = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    hw = static_cast<unsigned>(std::min<std::uint64_t>(hw, n_chunks));
    if (hw <= 1) {
        body(0, trials);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex next_mutex;
    std::uint64_t next_chunk = 0;
    std::exception_ptr first_error;
    for (unsigned w = 0; w < hw; ++w) {
        pool.emplace_back([&]() {
            try {
                for (;;) {
                    std::uint64_t c;
                    {
                        std::lock_guard<std::mutex> lock(next_mutex);
                        if (next_chunk >= n_chunks) return;
                        c = next_chunk++;
                    }
                    body(c * chunk, std::min(trials, (c + 1) * chunk));
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline EmpiricalCcdf finalize(const std::vector<double>& thresholds,
                              std::vector<std::uint64_t> hist, std::uint64_t trials,
                              double confidence) {
    EmpiricalCcdf out;
    out.thresholds = thresholds;
    out.trials_used = trials;
    out.confidence = confidence;
    const std::size_t k = thresholds.size();
    out.counts.assign(k, 0);
    std::uint64_t running = 0;
    for (std::size_t j = k; j-- > 0;) {
        running += hist[j + 1];
        out.counts[j] = running;
    }
    out.estimates.resize(k);
    out.ci_halfwidths.resize(k);
    const double z = specfun::normal_quantile(0.5 + confidence / 2.0);
    const double n = static_cast<double>(trials);
    for (std::size_t j = 0; j < k; ++j) {
        const double p = static_cast<double>(out.counts[j]) / n;
        out.estimates[j] = p;
        const double denom = 1.0 + z * z / n;
        out.ci_halfwidths[j] =
            z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    }
    return out;
}

inline void validate_ccdf_inputs(const NetworkScenario& s, const SimConfig& cfg,
                                 const std::vector<double>& thresholds) {
    if (cfg.trials < 100) throw std::domain_error("ccdf estimation needs at least 100 trials");
    if (thresholds.empty()) throw std::domain_error("ccdf estimation needs a threshold grid");
    double prev = 0.0;
    for (double t : thresholds) {
        if (!(t > prev)) throw std::domain_error("thresholds must be positive and increasing");
        prev = t;
    }
    if (cfg.window_radius > 0.0 && cfg.window_radius <= window_floor(s))
        throw std::domain_error(
            "explicit window radius must exceed 10x max(breakpoints, 1/sqrt(lambda pi))");
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
        throw std::domain_error("confidence must lie in (0,1)");
}

}  // namespace detail_mc

// Empirical ccdfs for all three metrics from one shared set of trials.
inline std::array<EmpiricalCcdf, 3> estimate_ccdf_all(const NetworkScenario& s,
                                                      const SimConfig& cfg,
                                                      const std::vector<double>& thresholds) {
    s.validate();
    detail_mc::validate_ccdf_inputs(s, cfg, thresholds);
    resolve_window_radius(s, cfg);  // surface sizing errors before spawning work
    const std::size_t k = thresholds.size();
    std::vector<std::uint64_t> hist_sir(k + 1, 0), hist_snr(k + 1, 0), hist_sinr(k + 1, 0);
    std::mutex merge_mutex;

    detail_mc::run_trials(cfg.trials, cfg.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> local_sir(k + 1, 0), local_snr(k + 1, 0),
            local_sinr(k + 1, 0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const TrialMetrics t = sample_trial(s, cfg, i);
            auto slot = [&](double v) {
                return static_cast<std::size_t>(
                    std::lower_bound(thresholds.begin(), thresholds.end(), v) -
                    thresholds.begin());
            };
            ++local_sir[slot(t.sir)];
            ++local_snr[slot(t.snr)];
            ++local_sinr[slot(t.sinr)];
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (std::size_t j = 0; j <= k; ++j) {
            hist_sir[j] += local_sir[j];
            hist_snr[j] += local_snr[j];
            hist_sinr[j] += local_sinr[j];
        }
    });

    return {detail_mc::finalize(thresholds, std::move(hist_sir), cfg.trials, cfg.confidence),
            detail_mc::finalize(thresholds, std::move(hist_snr), cfg.trials, cfg.confidence),
            detail_mc::finalize(thresholds, std::move(hist_sinr), cfg.trials, cfg.confidence)};
}

inline EmpiricalCcdf estimate_ccdf(const NetworkScenario& s, const SimConfig& cfg,
                                   const std::vector<double>& thresholds, Metric metric) {
    auto all = estimate_ccdf_all(s, cfg, thresholds);
    switch (metric) {
        case Metric::sir: return all[0];
        case Metric::snr: return all[1];
        default: return all[2];
    }
}

}  // namespace cellcover
