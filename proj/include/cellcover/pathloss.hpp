#pragma once

// Piecewise power-law path loss: N slopes alpha_0..alpha_{N-1} separated by
// breakpoints R_1 < ... < R_{N-1}, glued continuously by constants
// K_0 = 1, K_n = prod_{i<=n} R_i^(alpha_i - alpha_{i-1}).

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cellcover {

class PathLossModel {
  public:
    PathLossModel() = default;

    std::size_t segments() const { return exponents_.size(); }
    const std::vector<double>& exponents() const { return exponents_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& constants() const { return constants_; }
    bool ordered() const { return ordered_; }

    double exponent(std::size_t i) const { return exponents_[i]; }
    double constant(std::size_t i) const { return constants_[i]; }
    double last_exponent() const { return exponents_.back(); }
    double last_constant() const { return constants_.back(); }

    // 2/alpha_i, with the +inf convention when alpha_i = 0.
    double delta(std::size_t i) const {
        return exponents_[i] > 0.0 ? 2.0 / exponents_[i]
                                   : std::numeric_limits<double>::infinity();
    }

    // Segment holding distance d per the half-open bands [R_n, R_{n+1}).
    std::size_t segment_of(double distance) const {
        std::size_t lo = 0, hi = breakpoints_.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (distance < breakpoints_[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    double evaluate(double distance) const {
        if (!(distance > 0.0)) throw std::domain_error("path loss: distance must be > 0");
        const std::size_t n = segment_of(distance);
        return constants_[n] * std::pow(distance, -exponents_[n]);
    }

    double operator()(double distance) const { return evaluate(distance); }

    // Hot path for the simulator: squared distance in, no validation. The
    // common integer and half-integer exponents avoid pow entirely.
    double evaluate_sq(double dist_sq) const {
        std::size_t lo = 0, hi = breakpoints_sq_.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (dist_sq < breakpoints_sq_[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        const double k = constants_[lo];
        switch (half_exponent_kind_[lo]) {
            case 0: return k;                                        // alpha = 0
            case 1: return k / dist_sq;                              // alpha = 2
            case 2: return k / (dist_sq * dist_sq);                  // alpha = 4
            case 3: return k / std::sqrt(dist_sq);                   // alpha = 1
            case 4: return k / (dist_sq * std::sqrt(dist_sq));       // alpha = 3
            default: return k * std::pow(dist_sq, -0.5 * exponents_[lo]);
        }
    }

    friend PathLossModel make_multislope(std::vector<double> exponents,
                                         std::vector<double> breakpoints);

  private:
    std::vector<double> exponents_;
    std::vector<double> breakpoints_;
    std::vector<double> breakpoints_sq_;
    std::vector<double> constants_;
    std::vector<int> half_exponent_kind_;
    bool ordered_ = true;
};

inline PathLossModel make_multislope(std::vector<double> exponents,
                                     std::vector<double> breakpoints) {
    if (exponents.empty() || exponents.size() != breakpoints.size() + 1)
        throw std::domain_error("path loss: need |exponents| = |breakpoints| + 1 >= 1");
    for (double a : exponents)
        if (!std::isfinite(a) || a < 0.0)
            throw std::domain_error("path loss: exponents must be finite and >= 0");
    double prev = 0.0;
    for (double r : breakpoints) {
        if (!std::isfinite(r) || r <= prev)
            throw std::domain_error("path loss: breakpoints must be positive and strictly increasing");
        prev = r;
    }
    PathLossModel m;
    m.exponents_ = std::move(exponents);
    m.breakpoints_ = std::move(breakpoints);
    m.constants_.assign(m.exponents_.size(), 1.0);
    for (std::size_t n = 1; n < m.exponents_.size(); ++n)
        m.constants_[n] = m.constants_[n - 1] *
                          std::pow(m.breakpoints_[n - 1], m.exponents_[n] - m.exponents_[n - 1]);
    m.ordered_ = true;
    for (std::size_t n = 1; n < m.exponents_.size(); ++n)
        if (m.exponents_[n] < m.exponents_[n - 1]) m.ordered_ = false;
    m.breakpoints_sq_.reserve(m.breakpoints_.size());
    for (double r : m.breakpoints_) m.breakpoints_sq_.push_back(r * r);
    m.half_exponent_kind_.reserve(m.exponents_.size());
    for (double a : m.exponents_) {
        int kind = 5;
        if (a == 0.0) kind = 0;
        else if (a == 2.0) kind = 1;
        else if (a == 4.0) kind = 2;
        else if (a == 1.0) kind = 3;
        else if (a == 3.0) kind = 4;
        m.half_exponent_kind_.push_back(kind);
    }
    return m;
}

inline PathLossModel make_standard(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::domain_error("path loss: alpha must be finite and >= 0");
    return make_multislope({alpha}, {});
}

// Dual-slope model with eta = r_c^(alpha1 - alpha0). Pass allow_unordered for
// analytic experiments with decreasing exponents; the ordering-dependent
// property suites consult ordered().
inline PathLossModel make_dual(double alpha0, double alpha1, double r_c,
                               bool allow_unordered = false) {
    if (!std::isfinite(alpha0) || !std::isfinite(alpha1) || alpha0 < 0.0 || alpha1 < 0.0)
        throw std::domain_error("path loss: exponents must be finite and >= 0");
    if (!(r_c > 0.0) || !std::isfinite(r_c))
        throw std::domain_error("path loss: critical distance must be > 0");
    if (alpha0 > alpha1 && !allow_unordered)
        throw std::domain_error("path loss: need alpha0 <= alpha1 (or request an unordered model)");
    return make_multislope({alpha0, alpha1}, {r_c});
}

}  // namespace cellcover
