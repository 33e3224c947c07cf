#pragma once

// Coverage probability formulas for Poisson downlink networks under standard,
// dual-slope, and N-slope path loss, plus the derived coverage-density and
// potential-throughput metrics.
//
// Route map:
//   coverage_general     nearest-BS double integral, any model
//   coverage_dual        dual-slope integral with hypergeometric kernel
//   coverage_tworay      alpha = (2, 4) specialization, kernel-free
//   coverage_multislope  N-slope generalization of the dual-slope integral
//   coverage_snr         noise-only coverage (piecewise integral)
//   coverage_snr_tworay  closed form of the above for alpha = (2, 4)
//   coverage_sinr_lower_bound_tworay  closed-form lower bound, alpha = (2, 4)
//
// Semi-infinite pieces map to (0,1] via x -> 1/u; integrands decay
// exponentially there. All quadrature errors are surfaced in
// CoverageResult::error_estimate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cellcover/pathloss.hpp"
#include "cellcover/quadrature.hpp"
#include "cellcover/scenario.hpp"
#include "cellcover/specfun.hpp"

namespace cellcover {

namespace detail {

inline constexpr double pi = std::numbers::pi;

inline void require_threshold(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("threshold must be positive and finite");
}

inline void require_interference_convergent(const PathLossModel& m) {
    if (!(m.last_exponent() > 2.0))
        throw std::domain_error(
            "last path loss exponent <= 2: aggregate interference diverges almost surely, "
            "so SIR/SINR coverage is 0 and the coverage integral does not converge");
}

// Knots at scale * 3^k inside (lo, hi); seeds the adaptive integrator when an
// exponential factor concentrates the mass near lo.
inline std::vector<double> geometric_knots(double lo, double scale, double hi) {
    std::vector<double> knots;
    if (!(scale > 0.0) || !(hi > lo)) return knots;
    for (double k = lo + scale; k < hi; k *= 3.0) {
        knots.push_back(k);
        if (knots.size() > 40) break;
    }
    return knots;
}

// Near zero the coverage exponent behaves like mass*(c1 x^(1/delta0) + c2 x),
// so the integrand can concentrate at either x ~ 1/mass or the much smaller
// x ~ mass^(-delta0) once delta0 > 1. Seed ladders at both scales; adaptive
// refinement cannot discover mass that every initial node has already missed.
inline std::vector<double> near_field_knots(double mass, double delta0, double hi) {
    std::vector<double> knots;
    auto ladder = [&](double scale, std::size_t cap) {
        if (!(scale > 0.0)) return;
        for (double k = scale; k < hi && cap > 0; k *= 3.0, --cap) knots.push_back(k);
    };
    ladder(std::min(hi, 1.0) / std::max(1.0, mass), 40);
    if (std::isfinite(delta0) && delta0 > 1.0 && mass > 1.0) {
        const double deep = std::max(1e-250, std::pow(mass, -delta0)) * std::min(hi, 1.0);
        ladder(deep, 80);
    }
    return knots;
}

inline double pow_or_one(double x, double e) { return e == 0.0 ? 1.0 : std::pow(x, e); }

// C_beta with the argument clamped away from inf; beyond 1e250 every kernel
// value is indistinguishable from its limit at this precision.
inline double kernel(double beta, double arg) {
    if (arg > 1e250) arg = 1e250;
    return specfun::c_beta(beta, arg);
}

struct TermBudget {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
};

// Probabilities live in [0,1]; quadrature may overshoot by its own error
// bound, which is clamped away. Anything worse is left visible.
inline double clamp_probability(double value, double error) {
    const double slack = std::max(1e-9, 4.0 * error);
    if (value > 1.0 && value <= 1.0 + slack) return 1.0;
    if (value < 0.0 && value >= -slack) return 0.0;
    return value;
}

// The coverage exponents are increasing in the (squared) serving distance,
// so the integrand on [a, b] is alive only on [a, cut]. Locating the cut by
// log-bisection before integrating keeps the adaptive rule from sampling a
// live region smaller than its node spacing. Beyond exponent 55 the residual
// mass is < e^-55 * (b - a). The probe floor of 1e-30 widths bounds both the
// ignorable mass (< 45e-30 in probability) and the kernel arguments the
// probes can generate.
template <class Expo>
double live_upper_cut(Expo&& expo, double a, double b) {
    constexpr double dead = 55.0;
    if (!(expo(b) > dead)) return b;
    double w_hi = b - a;
    double w_lo = w_hi * 1e-30;
    if (expo(a + w_lo) > dead) return a + w_lo;
    for (int i = 0; i < 70; ++i) {
        const double w = std::sqrt(w_lo * w_hi);
        if (expo(a + w) > dead)
            w_hi = w;
        else
            w_lo = w;
    }
    return a + w_hi;
}

}  // namespace detail

// Closed-form SIR coverage under the standard model (density-invariant),
// valid for alpha > 2: 1 / C_{-2/alpha}(T).
inline double coverage_sir_standard(double alpha, double threshold) {
    detail::require_threshold(threshold);
    if (!(alpha > 2.0)) throw std::domain_error("standard SIR coverage needs alpha > 2");
    return 1.0 / specfun::c_beta(-2.0 / alpha, threshold);
}

// Dual-slope kernel integrand: x ranges over (0, 1], the squared serving
// distance normalized by the critical distance.
inline double integrand_I(double delta0, double delta1, double threshold, double x) {
    if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("integrand_I: x must be in (0,1]");
    detail::require_threshold(threshold);
    if (!(delta1 > 0.0 && delta1 < 1.0))
        throw std::domain_error("integrand_I: delta1 must be in (0,1)");
    if (!(delta0 > 0.0)) throw std::domain_error("integrand_I: delta0 must be positive");
    const double xp = std::isinf(delta0) ? 1.0 : std::pow(x, 1.0 / delta0);
    const double c_inv_t = detail::kernel(delta0, 1.0 / threshold);
    double near_term = 0.0;
    double cross_term = 1.0;
    if (xp > 0.0) {
        near_term = detail::kernel(delta0, 1.0 / (threshold * xp));
        cross_term = detail::kernel(-delta1, threshold * xp);
    }
    return near_term + cross_term + x * (1.0 - c_inv_t) - 1.0;
}

namespace detail {

struct DualParams {
    double alpha0, alpha1, r_c, delta0, delta1;
};

inline DualParams dual_params(const NetworkScenario& s) {
    if (s.pathloss.segments() != 2)
        throw std::domain_error("dual-slope coverage needs a two-segment model");
    DualParams p;
    p.alpha0 = s.pathloss.exponent(0);
    p.alpha1 = s.pathloss.exponent(1);
    p.r_c = s.pathloss.breakpoints()[0];
    p.delta0 = s.pathloss.delta(0);
    p.delta1 = 2.0 / p.alpha1;
    return p;
}

// lambda*pi*R^2 * int_0^1 exp(-lambda*pi*R^2*I(x) - noise0 * x^p0) dx
template <class BodyI>
quad::Result dual_near_field(double mass, double delta0, BodyI&& body_I, double noise0,
                             double p0, const TermBudget& budget) {
    auto expo = [&](double x) { return mass * body_I(x) + noise0 * pow_or_one(x, p0); };
    auto f = [&](double x) {
        const double e = expo(x);
        return e > 700.0 ? 0.0 : std::exp(-e);
    };
    const double cut = live_upper_cut(expo, 0.0, 1.0);
    auto knots = near_field_knots(std::max(mass, noise0), delta0, cut);
    return quad::gauss_kronrod(f, 0.0, cut, budget.abs_tol, budget.rel_tol, knots);
}

// int_1^inf exp(-a x - b x^p) dx mapped through x -> 1/u.
inline quad::Result far_field_unit(double a, double b, double p, const TermBudget& budget) {
    auto f = [&](double u) {
        if (!(u > 0.0)) return 0.0;
        const double expo = a / u + b * std::pow(u, -p);
        if (expo > 700.0) return 0.0;
        return std::exp(-expo) / (u * u);
    };
    std::vector<double> knots;
    if (a > 35.0) {
        for (double w = 3.0 / a; w < 1.0; w *= 3.0) knots.push_back(1.0 - w);
    } else if (a > 0.0) {
        knots = geometric_knots(0.0, std::min(1.0, a / 35.0), 1.0);
        knots.push_back(0.5);
    }
    return quad::gauss_kronrod(f, 0.0, 1.0, budget.abs_tol, budget.rel_tol, knots);
}

inline void require_converged(const quad::Result& r, const char* where) {
    if (!r.converged)
        throw std::runtime_error(std::string("quadrature failed to converge in ") + where);
}

}  // namespace detail

// Dual-slope SINR coverage (SIR when noise = 0).
inline CoverageResult coverage_dual(const NetworkScenario& s, double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    const auto p = detail::dual_params(s);
    detail::require_interference_convergent(s.pathloss);

    const double mass = s.density * detail::pi * p.r_c * p.r_c;
    const double noise0 = threshold * s.noise * detail::pow_or_one(p.r_c, p.alpha0);
    const double c_inv_t = detail::kernel(p.delta0, 1.0 / threshold);
    const double c_cross = detail::kernel(-p.delta1, threshold);

    const double inv_d0 = std::isinf(p.delta0) ? 0.0 : 1.0 / p.delta0;
    auto body_I = [&](double x) {
        const double xp = detail::pow_or_one(x, inv_d0);
        if (!(xp > 0.0)) return x * (1.0 - c_inv_t);
        const double near_term = detail::kernel(p.delta0, 1.0 / (threshold * xp));
        const double cross_term = detail::kernel(-p.delta1, threshold * xp);
        return near_term + cross_term + x * (1.0 - c_inv_t) - 1.0;
    };

    detail::TermBudget budget;
    auto near = detail::dual_near_field(mass, p.delta0, body_I, noise0, 0.5 * p.alpha0, budget);
    detail::require_converged(near, "dual-slope near-field term");
    auto far = detail::far_field_unit(mass * c_cross, noise0, 0.5 * p.alpha1, budget);
    detail::require_converged(far, "dual-slope far-field term");

    CoverageResult out;
    out.value = mass * (near.value + far.value);
    out.metric = s.noise > 0.0 ? Metric::sinr : Metric::sir;
    out.method = Method::dual_slope;
    out.threshold = threshold;
    out.error_estimate = mass * (near.error + far.error);
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// alpha = (2, 4) specialization; logarithm/arctangent integrand only.
inline CoverageResult coverage_tworay(const NetworkScenario& s, double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    const auto p = detail::dual_params(s);
    if (p.alpha0 != 2.0 || p.alpha1 != 4.0)
        throw std::domain_error("two-ray coverage needs exponents exactly (2, 4)");

    const double mass = s.density * detail::pi * p.r_c * p.r_c;
    const double noise0 = threshold * s.noise * p.r_c * p.r_c;
    const double tail_coeff = 1.0 + std::sqrt(threshold) * std::atan(std::sqrt(threshold));
    const double cross = threshold * std::log1p(1.0 / threshold);

    auto body_I = [&](double x) {
        const double xt = x * threshold;
        const double rt = std::sqrt(xt);
        return xt * std::log1p(1.0 / xt) + rt * std::atan(rt) + x * (1.0 - cross);
    };

    detail::TermBudget budget;
    budget.rel_tol = 1e-10;
    auto near = detail::dual_near_field(mass, 1.0, body_I, noise0, 1.0, budget);
    detail::require_converged(near, "two-ray near-field term");
    auto far = detail::far_field_unit(mass * tail_coeff, noise0, 2.0, budget);
    detail::require_converged(far, "two-ray far-field term");

    CoverageResult out;
    out.value = mass * (near.value + far.value);
    out.metric = s.noise > 0.0 ? Metric::sinr : Metric::sir;
    out.method = Method::two_ray_closed;
    out.threshold = threshold;
    out.error_estimate = mass * (near.error + far.error);
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// N-slope coverage. x is the squared serving distance; one integral per
// segment plus an exponential tail beyond the last breakpoint.
inline CoverageResult coverage_multislope(const NetworkScenario& s, double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    const auto& m = s.pathloss;
    const std::size_t n = m.segments();
    if (n < 2) throw std::domain_error("multislope coverage needs at least two segments");
    detail::require_interference_convergent(m);

    const double L = s.density * detail::pi;
    const auto& brk = m.breakpoints();
    const auto& K = m.constants();
    std::vector<double> edges_sq(n + 1);
    edges_sq[0] = 0.0;
    for (std::size_t i = 0; i < brk.size(); ++i) edges_sq[i + 1] = brk[i] * brk[i];
    edges_sq[n] = std::numeric_limits<double>::infinity();
    const double delta_last = 2.0 / m.last_exponent();
    const double tail_kernel = detail::kernel(-delta_last, threshold);
    const double r_last_sq = edges_sq[n - 1];
    const double r_last_pow = std::pow(brk.back(), m.last_exponent());

    detail::TermBudget budget;
    budget.abs_tol = 1e-15;
    quad::Result total;
    total.converged = true;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double alpha_i = m.exponent(i);
        const double delta_i = m.delta(i);
        const double half_ai = 0.5 * alpha_i;
        const double c_inv_t = detail::kernel(delta_i, 1.0 / threshold);
        const double noise_i = threshold * s.noise / K[i];
        const double r_up_pow = detail::pow_or_one(brk[i], alpha_i);

        auto body_I = [&](double x) {
            const double xp = detail::pow_or_one(x, half_ai);
            double val = x * (1.0 - c_inv_t) - r_last_sq;
            if (xp > 0.0) {
                val += edges_sq[i + 1] * detail::kernel(delta_i, r_up_pow / (threshold * xp));
                for (std::size_t j = i + 1; j + 1 < n; ++j) {
                    const double ratio = K[i] / K[j];
                    const double alpha_j = m.exponent(j);
                    const double delta_j = m.delta(j);
                    const double arg_hi =
                        ratio * detail::pow_or_one(brk[j], alpha_j) / (threshold * xp);
                    const double arg_lo =
                        ratio * detail::pow_or_one(brk[j - 1], alpha_j) / (threshold * xp);
                    val += edges_sq[j + 1] * detail::kernel(delta_j, arg_hi) -
                           edges_sq[j] * detail::kernel(delta_j, arg_lo);
                }
                val += r_last_sq *
                       detail::kernel(-delta_last, (K[n - 1] / K[i]) * threshold * xp / r_last_pow);
            } else {
                // Below the resolvable scale the far-band kernels sit at their
                // zero-argument limits and the sum telescopes to x(1 - C).
                val = x * (1.0 - c_inv_t);
            }
            return val;
        };

        auto expo = [&](double x) {
            return L * body_I(x) + noise_i * detail::pow_or_one(x, half_ai);
        };
        auto f = [&](double x) {
            const double e = expo(x);
            return e > 700.0 ? 0.0 : std::exp(-e);
        };
        const double cut = detail::live_upper_cut(expo, edges_sq[i], edges_sq[i + 1]);
        auto knots = i == 0 ? detail::near_field_knots(std::max(L, noise_i), delta_i, cut)
                            : detail::geometric_knots(edges_sq[i], 1.0 / L, cut);
        if (i > 0)
            for (double k : detail::geometric_knots(edges_sq[i], (cut - edges_sq[i]) / 64.0, cut))
                knots.push_back(k);
        auto seg =
            quad::gauss_kronrod(f, edges_sq[i], cut, budget.abs_tol, budget.rel_tol, knots);
        detail::require_converged(seg, "multislope segment term");
        total += seg;
    }

    // Tail beyond the last breakpoint: int_E^inf exp(-L C x - noise x^p) dx,
    // mapped to (0,1] via x -> E/u.
    {
        const double a = L * tail_kernel * r_last_sq;
        const double b = threshold * s.noise / K[n - 1];
        const double half_last = 0.5 * m.last_exponent();
        auto f = [&](double u) {
            if (!(u > 0.0)) return 0.0;
            const double x = r_last_sq / u;
            const double expo = a / u + b * std::pow(x, half_last);
            if (expo > 700.0) return 0.0;
            return std::exp(-expo) * r_last_sq / (u * u);
        };
        std::vector<double> knots;
        if (a > 35.0)
            for (double w = 3.0 / a; w < 1.0; w *= 3.0) knots.push_back(1.0 - w);
        else
            knots = detail::geometric_knots(0.0, std::min(1.0, a / 35.0), 1.0);
        auto tail = quad::gauss_kronrod(f, 0.0, 1.0, budget.abs_tol, budget.rel_tol, knots);
        detail::require_converged(tail, "multislope tail term");
        total += tail;
    }

    CoverageResult out;
    out.value = L * total.value;
    out.metric = s.noise > 0.0 ? Metric::sinr : Metric::sir;
    out.method = Method::multislope;
    out.threshold = threshold;
    out.error_estimate = L * total.error;
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// Nearest-BS coverage integral for an arbitrary path loss model. The inner
// interference integral is split at the images of the breakpoints and its
// pure power-law tail is integrated after a variable change that removes the
// endpoint singularity.
inline CoverageResult coverage_general(const NetworkScenario& s, double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    const auto& m = s.pathloss;
    detail::require_interference_convergent(m);

    const double L = s.density * detail::pi;
    const double alpha_last = m.last_exponent();
    const double k_last = m.last_constant();
    const double q = 2.0 / (alpha_last - 2.0);
    const auto& brk = m.breakpoints();

    auto inner = [&](double y) {
        const double root_y = std::sqrt(y);
        const double l_y = m.evaluate(root_y);
        std::vector<double> kinks;
        double t_hi = 1.0;
        for (double r : brk) {
            const double t = r * r / y;
            if (t > 1.0) {
                kinks.push_back(t);
                t_hi = t;
            }
        }
        double value = 0.0;
        if (t_hi > 1.0) {
            // The kink images can sit hundreds of decades above 1 when y is
            // tiny; seed log-spaced knots so the power-law bands subdivide
            // geometrically instead of by repeated bisection.
            for (double k = 10.0; k < t_hi && kinks.size() < 350; k *= 10.0) kinks.push_back(k);
            auto g = [&](double t) {
                const double ratio = l_y / m.evaluate_sq(t * y);
                return threshold / (threshold + ratio);
            };
            auto res = quad::gauss_kronrod(g, 1.0, t_hi, 1e-13, 1e-11, kinks, 4000);
            value += res.value;
        }
        // Power-law tail from t_hi: substituting t = t_hi v^{-q} flattens the
        // integrand to T q t_hi / (T v^{q+1} + c t_hi^{alpha/2}).
        const double c = l_y * std::pow(y, 0.5 * alpha_last) / k_last;
        const double scale = c * std::pow(t_hi, 0.5 * alpha_last);
        auto g_tail = [&](double v) {
            return threshold * q * t_hi / (threshold * std::pow(v, q + 1.0) + scale);
        };
        auto res_tail = quad::gauss_kronrod(g_tail, 0.0, 1.0, 1e-13, 1e-11);
        value += res_tail.value;
        return value;
    };

    // Cheap exponent lower bound (interference term dropped) locates the live
    // region; the nearest-distance term alone caps it at 45/L.
    auto expo_floor = [&](double y) {
        double e = L * y;
        if (s.noise > 0.0) e += threshold * s.noise / m.evaluate(std::sqrt(y));
        return e;
    };
    const double y_max = detail::live_upper_cut(expo_floor, 0.0, 45.0 / L);
    auto outer = [&](double y) {
        if (!(y > 0.0)) return 0.0;
        if (L * y > 700.0) return 0.0;  // inner(y) >= 0, integrand already dead
        double expo = L * y * (1.0 + inner(y));
        if (s.noise > 0.0) expo += threshold * s.noise / m.evaluate(std::sqrt(y));
        return expo > 700.0 ? 0.0 : std::exp(-expo);
    };
    std::vector<double> knots = detail::near_field_knots(L, m.delta(0), y_max);
    for (double k : detail::geometric_knots(0.0, y_max / 1000.0, y_max)) knots.push_back(k);
    for (double r : brk)
        if (r * r < y_max) knots.push_back(r * r);
    auto res = quad::gauss_kronrod(outer, 0.0, y_max, 1e-13, 1e-8, knots);
    detail::require_converged(res, "general coverage integral");

    CoverageResult out;
    out.value = L * res.value;
    out.metric = s.noise > 0.0 ? Metric::sinr : Metric::sir;
    out.method = Method::general_integral;
    out.threshold = threshold;
    // e^{-45} bounds the truncated outer tail; inner tolerance contributes
    // at most ~L * y * 1e-11 over the effective mass.
    out.error_estimate = L * res.error + 3e-20 + 5e-10;
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// Noise-only coverage for any model: serving-distance density against the
// fading tail, piecewise over the path loss segments.
inline CoverageResult coverage_snr(const NetworkScenario& s, double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    CoverageResult out;
    out.metric = Metric::snr;
    out.method = Method::snr_integral;
    out.threshold = threshold;
    if (s.noise == 0.0) {
        out.value = 1.0;
        out.error_estimate = 0.0;
        return out;
    }
    const auto& m = s.pathloss;
    const double L = s.density * detail::pi;
    const auto& brk = m.breakpoints();
    const auto& K = m.constants();
    const std::size_t n = m.segments();

    quad::Result total;
    total.converged = true;
    const double u_max = 45.0 / L;
    double lo = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = i < brk.size() ? std::min(brk[i] * brk[i], u_max) : u_max;
        if (hi <= lo) {
            lo = hi;
            continue;
        }
        const double half_ai = 0.5 * m.exponent(i);
        const double noise_i = threshold * s.noise / K[i];
        auto expo = [&](double u) { return L * u + noise_i * detail::pow_or_one(u, half_ai); };
        auto f = [&](double u) {
            const double e = expo(u);
            return e > 700.0 ? 0.0 : std::exp(-e);
        };
        const double cut = detail::live_upper_cut(expo, lo, hi);
        auto knots = detail::geometric_knots(lo, 1.0 / L, cut);
        for (double k : detail::geometric_knots(lo, (cut - lo) / 64.0, cut)) knots.push_back(k);
        auto seg = quad::gauss_kronrod(f, lo, cut, 1e-15, 1e-10, knots);
        detail::require_converged(seg, "snr coverage segment");
        total += seg;
        lo = hi;
    }
    out.value = L * total.value;
    out.error_estimate = L * total.error + 3e-20;
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// Closed-form SNR coverage for alpha = (2, 4); the exp * Q product is formed
// in log space since the exponent grows like (lambda R_c)^2 / sigma^2.
inline CoverageResult coverage_snr_tworay(const NetworkScenario& s, double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    const auto p = detail::dual_params(s);
    if (p.alpha0 != 2.0 || p.alpha1 != 4.0)
        throw std::domain_error("two-ray SNR closed form needs exponents exactly (2, 4)");
    if (!(s.noise > 0.0))
        throw std::domain_error("two-ray SNR closed form needs noise > 0 (coverage is 1 without noise)");

    const double L = s.density * detail::pi;
    const double ts = threshold * s.noise;
    const double rc2 = p.r_c * p.r_c;
    const double first = L / (L + ts) * (-std::expm1(-(L + ts) * rc2));
    const double a = L * L * rc2 / (4.0 * ts);
    const double b = (L + 2.0 * ts) * p.r_c / std::sqrt(2.0 * ts);
    const double second =
        L * std::sqrt(detail::pi) / std::sqrt(ts) * p.r_c * specfun::exp_times_q(a, b);

    CoverageResult out;
    out.value = first + second;
    out.metric = Metric::snr;
    out.method = Method::snr_closed;
    out.threshold = threshold;
    out.error_estimate = 1e-13 * std::abs(out.value);
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// Closed-form SINR lower bound for alpha = (2, 4). The near-field factor is
// the Jensen bound exp(lambda pi T / rho0 * (1 - (gamma_E + log(rho0 R_c^2) +
// E1(rho0 R_c^2)) / (1 - exp(-rho0 R_c^2)))); the far-field term is exact.
inline CoverageResult coverage_sinr_lower_bound_tworay(const NetworkScenario& s,
                                                       double threshold) {
    s.validate();
    detail::require_threshold(threshold);
    const auto p = detail::dual_params(s);
    if (p.alpha0 != 2.0 || p.alpha1 != 4.0)
        throw std::domain_error("two-ray SINR bound needs exponents exactly (2, 4)");
    if (!(s.noise > 0.0)) throw std::domain_error("two-ray SINR bound needs noise > 0");

    const double L = s.density * detail::pi;
    const double T = threshold;
    const double ts = T * s.noise;
    const double rc2 = p.r_c * p.r_c;
    const double rho0 = L * (1.0 + T) + ts;
    const double rho1 = L * p.r_c / std::sqrt(ts);
    const double c = rho0 * rc2;

    // gamma_E + log c + E1(c) = int_0^c (1 - e^{-t})/t dt; series below 1e-3
    // where the three summands cancel.
    double entire = 0.0;
    if (c < 1e-3) {
        double term = c, sum = 0.0;
        for (int k = 1; k <= 8; ++k) {
            sum += term / k;
            term *= -c / (k + 1);
        }
        entire = sum;
    } else {
        entire = specfun::euler_mascheroni + std::log(c) + specfun::exp_integral_e1(c);
    }
    const double one_minus_exp = -std::expm1(-c);
    const double jensen_expo = L * T / rho0 * (1.0 - entire / one_minus_exp);
    const double first = L / rho0 * one_minus_exp * std::exp(jensen_expo);

    const double kernel_half = 1.0 + std::sqrt(T) * std::atan(std::sqrt(T));
    const double a = 0.25 * kernel_half * kernel_half * rho1 * rho1;
    const double b = rho1 * kernel_half / std::sqrt(2.0) + std::sqrt(2.0 * ts) * p.r_c;
    const double second = std::sqrt(detail::pi) * rho1 * specfun::exp_times_q(a, b);

    CoverageResult out;
    out.value = first + second;
    out.metric = Metric::sinr;
    out.method = Method::lower_bound;
    out.threshold = threshold;
    out.error_estimate = 1e-12 * std::abs(out.value);
    out.value = detail::clamp_probability(out.value, out.error_estimate);
    return out;
}

// Route dispatch on segment count.
inline CoverageResult coverage_auto(const NetworkScenario& s, double threshold) {
    switch (s.pathloss.segments()) {
        case 1: return coverage_general(s, threshold);
        case 2: return coverage_dual(s, threshold);
        default: return coverage_multislope(s, threshold);
    }
}

// Coverage for a requested metric: SIR zeroes the noise, SNR drops the
// interference, SINR keeps both.
inline CoverageResult coverage_metric(const NetworkScenario& s, double threshold, Metric metric) {
    switch (metric) {
        case Metric::sir: {
            NetworkScenario no_noise = s;
            no_noise.noise = 0.0;
            auto r = coverage_auto(no_noise, threshold);
            r.metric = Metric::sir;
            return r;
        }
        case Metric::snr: return coverage_snr(s, threshold);
        default: return coverage_auto(s, threshold);
    }
}

inline double coverage_density(const NetworkScenario& s, double threshold) {
    return s.density * coverage_auto(s, threshold).value;
}

inline double potential_throughput(const NetworkScenario& s, double threshold) {
    return std::log2(1.0 + threshold) * coverage_density(s, threshold);
}

inline CcdfCurve ccdf_curve(const NetworkScenario& s, const std::vector<double>& thresholds,
                            Metric metric) {
    CcdfCurve curve;
    double prev = 0.0;
    for (double t : thresholds) {
        if (!(t > prev))
            throw std::domain_error("ccdf thresholds must be positive and strictly increasing");
        prev = t;
    }
    curve.thresholds = thresholds;
    curve.points.reserve(thresholds.size());
    for (double t : thresholds) curve.points.push_back(coverage_metric(s, t, metric));
    return curve;
}

}  // namespace cellcover
