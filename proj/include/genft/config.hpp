#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "genft/errors.hpp"

namespace genft {

/// Tolerances of the verification suite, keyed by check name.
inline const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t = {
        {"scaling", 1e-12},       {"kernel_sup", 0.01},  {"k0", 0.01},       {"k0_residual", 1e-6},
        {"kernel_bound", 1e-9},   {"growth", 0.05},      {"plancherel", 1e-6}, {"involution", 1e-6},
        {"inversion", 1e-6},      {"pitt", 1e-6},        {"probe", 0.95},    {"heisenberg", 1e-7},
        {"log_up", 1e-6},         {"derivative_link", 1e-6}, {"eigen", 1e-6}, {"gram", 1e-8},
        {"gm_witness", 1e-6},     {"dilation", 1e-6},    {"conjecture", 1e-6},
    };
    return t;
}

using ParamTriple = std::array<double, 3>;

/// Suite configuration: plain `key = value` lines, '#' starts a comment. Command-line flags are applied after
/// the file, so they win.
struct RunConfig {
    /// Radial corpus member ids to use (empty selects all).
    std::vector<std::string> corpus;
    /// (beta, lambda, a) points of the weighted-norm inequality sweep (empty selects the default grid).
    std::vector<ParamTriple> pitt_grid;
    /// (beta, lambda, a) points of the near-extremal probe (empty selects the default points).
    std::vector<ParamTriple> probe_points;
    double probe_eps = 1e-3;
    std::map<std::string, double> tolerances = default_tolerances();
    std::string out;
    unsigned threads = 0;
    bool strict = false;

    double tol(const std::string& key) const {
        auto it = tolerances.find(key);
        if (it == tolerances.end()) throw DomainError("unknown tolerance key: " + key);
        return it->second;
    }

    void validate() const {
        for (const auto& [key, value] : tolerances)
            if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("tolerance " + key + " must be positive");
        if (!(probe_eps > 0.0 && probe_eps < 1.0)) throw DomainError("probe.eps must lie in (0, 1)");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
    std::istringstream is(s);
    is.imbue(std::locale::classic());
    double v = 0.0;
    if (!(is >> v) || !(is >> std::ws).eof()) throw DomainError("bad number for " + key + ": " + s);
    return v;
}

/// "b:l:a; b:l:a" -> triples.
inline std::vector<ParamTriple> parse_triples(const std::string& s, const std::string& key) {
    std::vector<ParamTriple> out;
    for (const std::string& item : split(s, ';')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) throw DomainError(key + " expects beta:lambda:a entries");
        out.push_back({parse_double(parts[0], key), parse_double(parts[1], key), parse_double(parts[2], key)});
    }
    if (out.empty()) throw DomainError(key + " must not be empty");
    return out;
}

}  // namespace detail

/// Applies one setting; shared by the file parser and the flag overrides.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "corpus") {
        cfg.corpus = detail::split(value, ',');
        if (cfg.corpus.empty()) throw DomainError("corpus must not be empty");
    } else if (key == "pitt.grid") {
        cfg.pitt_grid = detail::parse_triples(value, key);
    } else if (key == "probe.points") {
        cfg.probe_points = detail::parse_triples(value, key);
    } else if (key == "probe.eps") {
        cfg.probe_eps = detail::parse_double(value, key);
    } else if (key.rfind("tol.", 0) == 0) {
        const std::string name = key.substr(4);
        if (!default_tolerances().count(name)) throw DomainError("unknown tolerance key: " + name);
        cfg.tolerances[name] = detail::parse_double(value, key);
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "threads") {
        const double t = detail::parse_double(value, key);
        if (t < 0 || t != std::floor(t)) throw DomainError("threads must be a nonnegative integer");
        cfg.threads = static_cast<unsigned>(t);
    } else if (key == "strict") {
        if (value != "true" && value != "false") throw DomainError("strict must be true or false");
        cfg.strict = value == "true";
    } else {
        throw DomainError("unknown config key: " + key);
    }
}

inline RunConfig parse_config(std::istream& is, RunConfig cfg = {}) {
    std::string line;
    int number = 0;
    while (std::getline(is, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(number) + ": expected key = value");
        apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig cfg = {}) {
    std::ifstream is(path);
    if (!is) throw DomainError("cannot open config file: " + path);
    return parse_config(is, std::move(cfg));
}

}  // namespace genft
