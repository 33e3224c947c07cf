#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcover/pathloss.hpp"

namespace cellcover {

enum class Metric { sir, snr, sinr };

enum class Method {
    general_integral,
    dual_slope,
    two_ray_closed,
    snr_integral,
    snr_closed,
    lower_bound,
    multislope,
    monte_carlo,
};

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::sir: return "sir";
        case Metric::snr: return "snr";
        default: return "sinr";
    }
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::general_integral: return "general-integral";
        case Method::dual_slope: return "dual-slope";
        case Method::two_ray_closed: return "two-ray-closed";
        case Method::snr_integral: return "snr-integral";
        case Method::snr_closed: return "snr-closed";
        case Method::lower_bound: return "lower-bound";
        case Method::multislope: return "multislope";
        default: return "monte-carlo";
    }
}

inline Metric metric_from_string(const std::string& s) {
    if (s == "sir") return Metric::sir;
    if (s == "snr") return Metric::snr;
    if (s == "sinr") return Metric::sinr;
    throw std::domain_error("unknown metric: " + s);
}

// Full input to a coverage query: BS density (per unit area), noise power
// normalized by transmit power, and the path loss model.
struct NetworkScenario {
    double density = 1.0;
    double noise = 0.0;
    PathLossModel pathloss;

    void validate() const {
        if (!(density > 0.0) || !std::isfinite(density))
            throw std::domain_error("scenario: density must be positive and finite");
        if (!(noise >= 0.0) || !std::isfinite(noise))
            throw std::domain_error("scenario: noise must be >= 0 and finite");
        if (pathloss.segments() == 0)
            throw std::domain_error("scenario: path loss model is empty");
    }
};

struct CoverageResult {
    double value = 0.0;
    Metric metric = Metric::sinr;
    Method method = Method::general_integral;
    double threshold = 1.0;       // linear
    double error_estimate = 0.0;  // quadrature error bound or CI half-width
};

struct CcdfCurve {
    std::vector<double> thresholds;  // linear, strictly increasing
    std::vector<CoverageResult> points;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace cellcover
