#pragma once

// Special functions used by the coverage formulas:
//
//   c_beta(beta, x)            2F1(1, beta; 1+beta; -x), the interference kernel
//   q_function(x)              Gaussian tail probability
//   exp_times_q(a, b)          exp(a) * Q(b) without overflow
//   exp_integral_e1(x)         int_x^inf exp(-t)/t dt
//   lower_incomplete_gamma     int_0^z t^(s-1) exp(-t) dt
//
// All routines target <= 1e-10 relative error on their stated domains, an
// order of magnitude tighter than the quadrature tolerances built on top.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cellcover/quadrature.hpp"

namespace cellcover::specfun {

inline constexpr double euler_mascheroni = 0.577215664901532860606512090082;

namespace detail {

// Alternating power series sum_{n>=0} beta/(beta+n) (-x)^n, valid for x < 1.
// Coefficients are bounded for beta > 0 and grow like |beta|/(1+beta) for
// beta in (-1, 0); with x <= 1/2 the sum stays well conditioned either way.
inline double c_beta_series(double beta, double x) {
    double sum = 1.0;
    double power = 1.0;
    for (int n = 1; n < 200; ++n) {
        power *= -x;
        const double term = beta / (beta + n) * power;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
    }
    throw std::runtime_error("c_beta series did not converge");
}

// beta > 0 branch of the defining integral, in the substituted form
//   C_beta(x) = int_0^1 dv / (1 + x v^(1/beta)),
// which moves the u^(beta-1) weight into the node distribution so tanh-sinh
// resolves both small and large beta.
inline double c_beta_integral_pos(double beta, double x) {
    const double inv_beta = 1.0 / beta;
    auto res = quad::tanh_sinh_01(
        [&](double v, double) { return 1.0 / (1.0 + x * std::pow(v, inv_beta)); }, 1e-13);
    if (!res.converged && res.error > 1e-11 * std::abs(res.value))
        throw std::runtime_error("c_beta quadrature did not converge");
    return res.value;
}

inline double c_beta_pos(double beta, double x);

// beta in (-1, 0): reduce to the positive-order case through
//   C_{-d}(x) = 1 + d/(1-d) * x * C_{1-d}(x),  d = -beta in (0, 1).
inline double c_beta_neg(double beta, double x) {
    const double d = -beta;
    return 1.0 + d / (1.0 - d) * x * c_beta_pos(1.0 - d, x);
}

inline double c_beta_pos(double beta, double x) {
    if (x < 0.5) return c_beta_series(beta, x);
    return c_beta_integral_pos(beta, x);
}

}  // namespace detail

// General evaluation path (series / integral only, no closed-form shortcuts).
// Exposed so tests can pit it against the closed forms below.
inline double c_beta_general(double beta, double x) {
    if (std::isnan(beta) || std::isnan(x) || !std::isfinite(x))
        throw std::domain_error("c_beta: non-finite argument");
    if (x < 0.0) throw std::domain_error("c_beta: x must be >= 0");
    if (std::isinf(beta)) {
        if (beta < 0.0) throw std::domain_error("c_beta: beta must exceed -1");
        return 1.0 / (1.0 + x);
    }
    if (beta <= -1.0 || beta == 0.0)
        throw std::domain_error("c_beta: beta must lie in (-1,0) or (0,inf)");
    if (x == 0.0) return 1.0;
    if (beta > 0.0) {
        if (x < 0.5) return detail::c_beta_series(beta, x);
        return detail::c_beta_integral_pos(beta, x);
    }
    if (x < 0.5) return detail::c_beta_series(beta, x);
    return detail::c_beta_neg(beta, x);
}

// 2F1(1, beta; 1+beta; -x) with closed-form short circuits for the orders the
// dual-slope formulas hit most (beta = 1, 1/2, -1/2, 2 and the beta = inf
// convention for a zero near-field exponent).
inline double c_beta(double beta, double x) {
    if (std::isnan(beta) || std::isnan(x) || !std::isfinite(x))
        throw std::domain_error("c_beta: non-finite argument");
    if (x < 0.0) throw std::domain_error("c_beta: x must be >= 0");
    if (std::isinf(beta)) {
        if (beta < 0.0) throw std::domain_error("c_beta: beta must exceed -1");
        return 1.0 / (1.0 + x);
    }
    if (beta <= -1.0 || beta == 0.0)
        throw std::domain_error("c_beta: beta must lie in (-1,0) or (0,inf)");
    if (x == 0.0) return 1.0;
    if (beta == 1.0) return x > 1e-4 ? std::log1p(x) / x : 1.0 - x / 2 + x * x / 3 - x * x * x / 4;
    if (beta == 0.5) {
        const double r = std::sqrt(x);
        return x > 1e-4 ? std::atan(r) / r : 1.0 - x / 3 + x * x / 5 - x * x * x / 7;
    }
    if (beta == -0.5) {
        const double r = std::sqrt(x);
        return 1.0 + r * std::atan(r);
    }
    if (beta == 2.0) {
        if (x > 1e-3) return 2.0 * (x - std::log1p(x)) / (x * x);
        return 1.0 - 2.0 * x / 3 + x * x / 2 - 2.0 * x * x * x / 5;  // series of the same form
    }
    return c_beta_general(beta, x);
}

// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_function(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_function: non-finite argument");
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

// Scaled complementary error function exp(x^2) erfc(x). The mid branch uses
// erfcx(x) = (2/sqrt(pi)) int_0^inf exp(-2xu - u^2) du rather than libm's
// erfc, whose deep tail carries ~1e-5 relative error.
inline double erfcx(double x) {
    if (x < 0.0) {
        // erfcx(-x) = 2 exp(x^2) - erfcx(x); only needed for moderate |x|.
        if (x < -26.0) return std::numeric_limits<double>::infinity();
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x < 0.5) return std::exp(x * x) * std::erfc(x);
    if (x < 6.5) {
        const double u_max = -x + std::sqrt(x * x + 45.0);
        auto res = quad::gauss_kronrod(
            [&](double u) { return std::exp(-2.0 * x * u - u * u); }, 0.0, u_max, 1e-16, 1e-13);
        return res.value * 1.1283791670955125739;  // 2/sqrt(pi)
    }
    // Asymptotic tail with truncation at the smallest term:
    // erfcx(x) ~ (1/(x sqrt(pi))) sum (-1)^k (2k-1)!!/(2x^2)^k.
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double next = term * -(2 * k - 1) * inv2x2;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * sum) break;
    }
    return sum / (x * 1.7724538509055160273);
}

// exp(a) * Q(b), evaluated through erfcx so that huge a and b can cancel.
inline double exp_times_q(double a, double b) {
    if (b < 0.0) {
        // Q(b) >= 1/2 here, so the plain product is safe unless exp(a) itself
        // overflows, in which case the result genuinely overflows.
        return std::exp(a) * q_function(b);
    }
    const double log_part = a - 0.5 * b * b;
    if (log_part < -745.0) return 0.0;
    return 0.5 * std::exp(log_part) * erfcx(b * 0.7071067811865475244);
}

// E1(x) = int_x^inf exp(-t)/t dt for x > 0. Series below 1, Lentz continued
// fraction above.
inline double exp_integral_e1(double x) {
    if (!std::isfinite(x)) throw std::domain_error("exp_integral_e1: non-finite argument");
    if (x <= 0.0) throw std::domain_error("exp_integral_e1: x must be > 0");
    if (x <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int n = 1; n < 60; ++n) {
            term *= -x / n;
            const double add = -term / n;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return -euler_mascheroni - std::log(x) + sum;
    }
    if (x > 740.0) return 0.0;  // below the smallest normal double
    // e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))), modified Lentz.
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x);
}

// gamma(s, z) = int_0^z t^(s-1) exp(-t) dt, s > 0, z >= 0.
inline double lower_incomplete_gamma(double s, double z) {
    if (!std::isfinite(s) || !std::isfinite(z))
        throw std::domain_error("lower_incomplete_gamma: non-finite argument");
    if (s <= 0.0) throw std::domain_error("lower_incomplete_gamma: s must be > 0");
    if (z < 0.0) throw std::domain_error("lower_incomplete_gamma: z must be >= 0");
    if (z == 0.0) return 0.0;
    const double lgam = std::lgamma(s);
    if (z < s + 1.0) {
        // Regularized series P(s,z), then unscale.
        double ap = s;
        double term = 1.0 / s;
        double sum = term;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= z / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-z + s * std::log(z));
    }
    // Continued fraction for the upper function Q(s,z); gamma = Gamma(s)(1-Q).
    const double tiny = 1e-300;
    double b = z + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    const double upper_regularized = std::exp(-z + s * std::log(z) - lgam) * h;
    return std::exp(lgam) * (1.0 - upper_regularized);
}

// Inverse standard normal cdf (Acklam's rational approximation plus one
// Halley step), used for Wilson confidence intervals.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b_[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b_[0] * r + b_[1]) * r + b_[2]) * r + b_[3]) * r + b_[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against the cdf expressed with erfc.
    const double e = 0.5 * std::erfc(-x * 0.7071067811865475244) - p;
    const double u = e * 2.5066282746310002 * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

}  // namespace cellcover::specfun
