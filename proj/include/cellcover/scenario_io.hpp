#pragma once

// Scenario files: a small TOML-style key-value format (default) or JSON,
// selected by file extension. Unknown keys are rejected so typos fail loudly.
//
//   density = 1.0
//   noise = 1.0
//   [pathloss]
//   exponents = [2.0, 4.0]
//   breakpoints = [1.0]
//   [thresholds]
//   min_db = -20.0
//   max_db = 20.0
//   steps = 41
//   [sim]
//   trials = 100000
//   seed = 1
//   fading = "rayleigh"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cellcover/montecarlo.hpp"
#include "cellcover/scenario.hpp"

namespace cellcover {

struct ThresholdSpec {
    bool from_grid = true;
    double min_db = -20.0;
    double max_db = 20.0;
    int steps = 41;
    std::vector<double> explicit_db;

    std::vector<double> linear_grid() const {
        std::vector<double> out;
        if (from_grid) {
            if (steps < 1) throw std::domain_error("thresholds: steps must be >= 1");
            if (steps == 1) {
                out.push_back(db_to_linear(min_db));
                return out;
            }
            if (!(max_db > min_db))
                throw std::domain_error("thresholds: need max_db > min_db");
            for (int i = 0; i < steps; ++i)
                out.push_back(db_to_linear(min_db + (max_db - min_db) * i / (steps - 1)));
        } else {
            for (double db : explicit_db) out.push_back(db_to_linear(db));
        }
        double prev = 0.0;
        for (double t : out) {
            if (!(t > prev)) throw std::domain_error("thresholds must be strictly increasing");
            prev = t;
        }
        return out;
    }
};

struct ScenarioFile {
    NetworkScenario scenario;
    ThresholdSpec thresholds;
    SimConfig sim;
};

namespace detail_io {

using Value = std::variant<double, std::vector<double>, std::string>;

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::domain_error("scenario file: bad number '" + s + "' for " + where);
    }
}

inline Value parse_value(const std::string& raw, const std::string& where) {
    std::string s = trim(raw);
    if (s.empty()) throw std::domain_error("scenario file: empty value for " + where);
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw std::domain_error("scenario file: unterminated string for " + where);
        return s.substr(1, s.size() - 2);
    }
    if (s.front() == '[') {
        if (s.back() != ']')
            throw std::domain_error("scenario file: unterminated array for " + where);
        std::vector<double> items;
        std::string body = s.substr(1, s.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) items.push_back(parse_number(item, where));
        }
        return items;
    }
    return parse_number(s, where);
}

inline std::map<std::string, Value> parse_toml_like(std::istream& in) {
    std::map<std::string, Value> kv;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // strip comments outside of quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::domain_error("scenario file: bad section header at line " +
                                        std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("scenario file: expected key = value at line " +
                                    std::to_string(line_no));
        std::string key = trim(line.substr(0, eq));
        const std::string full = section.empty() ? key : section + "." + key;
        if (kv.count(full))
            throw std::domain_error("scenario file: duplicate key " + full);
        kv[full] = parse_value(line.substr(eq + 1), full);
    }
    return kv;
}

inline double as_number(const Value& v, const std::string& key) {
    if (auto* d = std::get_if<double>(&v)) return *d;
    throw std::domain_error("scenario file: " + key + " must be a number");
}

inline std::vector<double> as_array(const Value& v, const std::string& key) {
    if (auto* a = std::get_if<std::vector<double>>(&v)) return *a;
    throw std::domain_error("scenario file: " + key + " must be an array");
}

inline std::string as_string(const Value& v, const std::string& key) {
    if (auto* s = std::get_if<std::string>(&v)) return *s;
    throw std::domain_error("scenario file: " + key + " must be a string");
}

inline FadingModel fading_from_string(const std::string& s) {
    if (s == "rayleigh" || s == "rayleigh-unit-mean") return FadingModel::rayleigh_unit_mean;
    if (s == "lognormal") return FadingModel::lognormal;
    if (s == "none") return FadingModel::none;
    throw std::domain_error("scenario file: unknown fading model '" + s + "'");
}

inline ScenarioFile build(std::map<std::string, Value> kv) {
    ScenarioFile out;
    auto take = [&](const char* key) -> std::optional<Value> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        Value v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("density")) out.scenario.density = as_number(*v, "density");
    if (auto v = take("noise")) out.scenario.noise = as_number(*v, "noise");

    auto exps = take("pathloss.exponents");
    if (!exps) throw std::domain_error("scenario file: missing pathloss.exponents");
    std::vector<double> brks;
    if (auto v = take("pathloss.breakpoints")) brks = as_array(*v, "pathloss.breakpoints");
    out.scenario.pathloss = make_multislope(as_array(*exps, "pathloss.exponents"), brks);

    bool have_grid = false, have_list = false;
    if (auto v = take("thresholds.min_db")) {
        out.thresholds.min_db = as_number(*v, "thresholds.min_db");
        have_grid = true;
    }
    if (auto v = take("thresholds.max_db")) {
        out.thresholds.max_db = as_number(*v, "thresholds.max_db");
        have_grid = true;
    }
    if (auto v = take("thresholds.steps")) {
        out.thresholds.steps = static_cast<int>(as_number(*v, "thresholds.steps"));
        have_grid = true;
    }
    if (auto v = take("thresholds.db")) {
        out.thresholds.explicit_db = as_array(*v, "thresholds.db");
        have_list = true;
    }
    if (have_grid && have_list)
        throw std::domain_error("scenario file: give either a threshold grid or a list, not both");
    out.thresholds.from_grid = !have_list;

    if (auto v = take("sim.trials"))
        out.sim.trials = static_cast<std::uint64_t>(as_number(*v, "sim.trials"));
    if (auto v = take("sim.window_radius"))
        out.sim.window_radius = as_number(*v, "sim.window_radius");
    if (auto v = take("sim.seed")) out.sim.seed = static_cast<std::uint64_t>(as_number(*v, "sim.seed"));
    if (auto v = take("sim.fading")) out.sim.fading = fading_from_string(as_string(*v, "sim.fading"));
    if (auto v = take("sim.lognormal_sigma_db"))
        out.sim.lognormal_sigma_db = as_number(*v, "sim.lognormal_sigma_db");
    if (auto v = take("sim.confidence")) out.sim.confidence = as_number(*v, "sim.confidence");

    if (!kv.empty())
        throw std::domain_error("scenario file: unknown key '" + kv.begin()->first + "'");
    out.scenario.validate();
    return out;
}

inline std::map<std::string, Value> flatten_json(const nlohmann::json& j) {
    std::map<std::string, Value> kv;
    for (auto& [section_key, section_val] : j.items()) {
        auto insert = [&](const std::string& key, const nlohmann::json& v) {
            if (v.is_number()) {
                kv[key] = v.get<double>();
            } else if (v.is_string()) {
                kv[key] = v.get<std::string>();
            } else if (v.is_array()) {
                std::vector<double> a;
                for (auto& e : v) {
                    if (!e.is_number())
                        throw std::domain_error("scenario file: array " + key +
                                                " must hold numbers");
                    a.push_back(e.get<double>());
                }
                kv[key] = a;
            } else {
                throw std::domain_error("scenario file: unsupported value type for " + key);
            }
        };
        if (section_val.is_object()) {
            for (auto& [k, v] : section_val.items()) insert(section_key + "." + k, v);
        } else {
            insert(section_key, section_val);
        }
    }
    return kv;
}

}  // namespace detail_io

inline ScenarioFile parse_scenario_toml(std::istream& in) {
    return detail_io::build(detail_io::parse_toml_like(in));
}

inline ScenarioFile parse_scenario_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::domain_error(std::string("scenario file: JSON parse error: ") + e.what());
    }
    return detail_io::build(detail_io::flatten_json(j));
}

inline ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open scenario file: " + path);
    const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    return json ? parse_scenario_json(in) : parse_scenario_toml(in);
}

inline std::string write_scenario_toml(const ScenarioFile& file) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    auto arr = [&](const std::vector<double>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += num(v[i]);
        }
        return s + "]";
    };
    std::string out;
    out += "density = " + num(file.scenario.density) + "\n";
    out += "noise = " + num(file.scenario.noise) + "\n\n";
    out += "[pathloss]\n";
    out += "exponents = " + arr(file.scenario.pathloss.exponents()) + "\n";
    out += "breakpoints = " + arr(file.scenario.pathloss.breakpoints()) + "\n\n";
    out += "[thresholds]\n";
    if (file.thresholds.from_grid) {
        out += "min_db = " + num(file.thresholds.min_db) + "\n";
        out += "max_db = " + num(file.thresholds.max_db) + "\n";
        out += "steps = " + std::to_string(file.thresholds.steps) + "\n";
    } else {
        out += "db = " + arr(file.thresholds.explicit_db) + "\n";
    }
    out += "\n[sim]\n";
    out += "trials = " + std::to_string(file.sim.trials) + "\n";
    if (file.sim.window_radius > 0.0)
        out += "window_radius = " + num(file.sim.window_radius) + "\n";
    out += "seed = " + std::to_string(file.sim.seed) + "\n";
    const char* fading = file.sim.fading == FadingModel::rayleigh_unit_mean ? "rayleigh"
                         : file.sim.fading == FadingModel::lognormal        ? "lognormal"
                                                                            : "none";
    out += "fading = \"" + std::string(fading) + "\"\n";
    if (file.sim.fading == FadingModel::lognormal)
        out += "lognormal_sigma_db = " + num(file.sim.lognormal_sigma_db) + "\n";
    out += "confidence = " + num(file.sim.confidence) + "\n";
    return out;
}

}  // namespace cellcover
