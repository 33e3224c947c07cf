#pragma once

// Adaptive Gauss-Kronrod (7-15) and tanh-sinh quadrature on finite intervals.
// Both return an error estimate alongside the value; callers decide whether a
// non-converged result is fatal.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace cellcover::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    long evaluations = 0;

    Result& operator+=(const Result& other) {
        value += other.value;
        error += other.error;
        converged = converged && other.converged;
        evaluations += other.evaluations;
        return *this;
    }
};

namespace detail {

// QUADPACK 15-point Kronrod abscissae (positive half) and weights, with the
// embedded 7-point Gauss weights on the even-index nodes.
inline constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr double kKronrodWeights[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
inline constexpr double kGaussWeights[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel evaluate_panel(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double kronrod = kKronrodWeights[0] * fc;
    double gauss = kGaussWeights[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * fsum;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * half;
    const double diff = std::abs(kronrod - gauss) * half;
    // QUADPACK-style sharpening of the raw Gauss/Kronrod difference.
    p.error = diff;
    if (diff > 0.0) {
        const double scale = std::pow(200.0 * diff / (std::abs(p.value) + diff), 1.5);
        if (scale < 1.0) p.error = diff * scale;
    }
    return p;
}

}  // namespace detail

// Adaptive Gauss-Kronrod over [a, b]. Optional interior knots force an initial
// subdivision (used to seed known kinks or concentration scales).
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double abs_tol, double rel_tol,
                     const std::vector<double>& knots = {}, int max_panels = 2000) {
    Result out;
    if (!(a < b)) {
        out.converged = true;
        return out;
    }
    std::vector<double> edges;
    edges.push_back(a);
    for (double k : knots)
        if (k > a && k < b) edges.push_back(k);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<detail::Panel> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = detail::evaluate_panel(f, edges[i], edges[i + 1]);
        out.evaluations += 15;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int panels = static_cast<int>(edges.size()) - 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating-point resolution; cannot refine further.
            heap.push(worst);
            break;
        }
        auto left = detail::evaluate_panel(f, worst.a, mid);
        auto right = detail::evaluate_panel(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    out.value = total;
    out.error = total_err;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

// tanh-sinh rule on (0, 1). Robust to integrable endpoint singularities; the
// callback receives the node x and, for resolution near the right endpoint,
// one_minus_x computed without cancellation.
template <class F>
Result tanh_sinh_01(F&& f, double rel_tol = 1e-13, double abs_tol = 0.0, int max_level = 9) {
    constexpr double t_max = 6.1;  // beyond this the node weight underflows
    Result out;
    const double pi_half = 1.5707963267948966;

    auto node_sum = [&](double h, bool odd_only) {
        double sum = 0.0;
        const double step = odd_only ? 2.0 * h : h;
        const double start = odd_only ? h : 0.0;
        for (double t = start;; t += step) {
            const double s = pi_half * std::sinh(t);
            const double e2s = std::exp(-2.0 * s);
            const double x_lo = e2s / (1.0 + e2s);        // -> 0 as t grows
            const double x_hi = 1.0 / (1.0 + e2s);        // -> 1
            const double w = 3.141592653589793 * std::cosh(t) * x_lo * x_hi;
            if (!(w > 0.0) || x_lo < 1e-305) break;
            double contrib = w * f(x_hi, x_lo);           // node at x_hi
            if (t > 0.0) contrib += w * f(x_lo, x_hi);    // mirrored node
            out.evaluations += (t > 0.0) ? 2 : 1;
            sum += contrib;
            if (t > t_max) break;
        }
        return sum;
    };

    double h = 1.0;
    double integral = node_sum(h, false) * h;
    double prev = integral;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        integral = 0.5 * prev + node_sum(h, true) * h;
        const double delta = std::abs(integral - prev);
        out.error = delta;
        if (level >= 2 && delta <= std::max(abs_tol, rel_tol * std::abs(integral))) {
            out.converged = true;
            out.value = integral;
            return out;
        }
        prev = integral;
    }
    out.value = integral;
    return out;
}

}  // namespace cellcover::quad
