// config.hpp — run configuration: sectioned key-value file with the schema
//   [model]   alpha, beta, omega (list), g_re (list), g_im (list), cutoff (list)
//   [bath]    kind = vacuum|fock|coherent|thermal, n (list), f_re/f_im (list), theta
//   [initial] bloch = rx, ry, rz
//   [grid]    t_max, steps
//   [run]     method = closed_form|oracle|both, seed, tolerance
// Lists are comma-separated; '#' starts a comment.

#pragma once

#include "sbsim/dynamics.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace sbsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMethod { closed_form, oracle, both };

struct BathSpec {
    std::string kind{"vacuum"};
    std::vector<Eigen::Index> occupations;  // fock
    std::vector<Complex> amplitudes;        // coherent
    double theta{1.0};                      // thermal
};

struct RunConfig {
    ModelParams params;
    BathSpec bath;
    double bloch[3] = {0.0, 0.0, 1.0};
    double t_max{10.0};
    int steps{100};
    RunMethod method{RunMethod::closed_form};
    std::uint64_t seed{42};
    double tolerance{1e-10};

    QubitState initial_state() const {
        return QubitState::from_bloch(bloch[0], bloch[1], bloch[2]);
    }

    BathState bath_state() const {
        if (bath.kind == "vacuum") return dynamics::vacuum_state(params.space);
        if (bath.kind == "fock") return dynamics::fock_state(params.space, bath.occupations);
        if (bath.kind == "coherent")
            return dynamics::coherent_state(params.space, bath.amplitudes);
        if (bath.kind == "thermal")
            return dynamics::thermal_state(params.space, params.modes, bath.theta);
        throw ConfigError("unknown bath kind: " + bath.kind);
    }

    std::vector<double> time_grid() const {
        if (t_max == 0.0) return {0.0};
        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(steps) + 1);
        for (int i = 0; i <= steps; ++i)
            times.push_back(t_max * static_cast<double>(i) / static_cast<double>(steps));
        return times;
    }

    void validate() const {
        params.validate();
        const double len2 = bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2];
        if (len2 > 1.0 + 1e-12)
            throw ConfigError("initial: Bloch vector length must be <= 1");
        if (t_max < 0.0 || !std::isfinite(t_max)) throw ConfigError("grid: t_max must be >= 0");
        if (steps < 1) throw ConfigError("grid: steps must be >= 1");
        if (tolerance <= 0.0) throw ConfigError("run: tolerance must be > 0");
        if (method == RunMethod::closed_form && params.beta != 0.0)
            throw ConfigError("closed form requires beta = 0");
    }
};

namespace config {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<double> parse_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "' for key " + key);
        }
    }
    if (out.empty()) throw ConfigError("empty value for key " + key);
    return out;
}

inline double parse_scalar(const std::string& value, const std::string& key) {
    const auto list = parse_list(value, key);
    if (list.size() != 1) throw ConfigError("expected a single number for key " + key);
    return list[0];
}

}  // namespace detail

using KeyValues = std::map<std::string, std::string>;  // "section.key" -> value

inline KeyValues parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    KeyValues kv;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        const std::string key = detail::trim(line.substr(0, eq));
        if (section.empty() || key.empty())
            throw ConfigError("key outside a section at line " + std::to_string(lineno));
        kv[section + "." + key] = detail::trim(line.substr(eq + 1));
    }
    return kv;
}

inline RunConfig from_key_values(const KeyValues& kv) {
    RunConfig cfg;
    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    if (auto v = get("model.alpha")) cfg.params.alpha = detail::parse_scalar(*v, "model.alpha");
    if (auto v = get("model.beta")) cfg.params.beta = detail::parse_scalar(*v, "model.beta");

    std::vector<double> omega{1.0}, g_re{0.0}, g_im, cutoff{32};
    if (auto v = get("model.omega")) omega = detail::parse_list(*v, "model.omega");
    if (auto v = get("model.g_re")) g_re = detail::parse_list(*v, "model.g_re");
    if (auto v = get("model.g_im")) g_im = detail::parse_list(*v, "model.g_im");
    if (auto v = get("model.cutoff")) cutoff = detail::parse_list(*v, "model.cutoff");
    if (g_im.empty()) g_im.assign(g_re.size(), 0.0);
    if (omega.size() != g_re.size() || omega.size() != g_im.size() ||
        omega.size() != cutoff.size())
        throw ConfigError("model: omega, g_re, g_im and cutoff must have equal lengths");

    cfg.params.modes.clear();
    std::vector<Eigen::Index> dims;
    for (std::size_t k = 0; k < omega.size(); ++k) {
        cfg.params.modes.push_back({omega[k], Complex(g_re[k], g_im[k])});
        const double d = cutoff[k];
        if (d < 2.0 || d != std::floor(d))
            throw ConfigError("model: every cutoff must be an integer >= 2");
        dims.push_back(static_cast<Eigen::Index>(d));
    }
    cfg.params.space = FockSpaceSpec(dims);

    if (auto v = get("bath.kind")) cfg.bath.kind = *v;
    if (auto v = get("bath.n")) {
        for (double n : detail::parse_list(*v, "bath.n")) {
            if (n < 0.0 || n != std::floor(n))
                throw ConfigError("bath: occupations must be non-negative integers");
            cfg.bath.occupations.push_back(static_cast<Eigen::Index>(n));
        }
    }
    {
        std::vector<double> f_re, f_im;
        if (auto v = get("bath.f_re")) f_re = detail::parse_list(*v, "bath.f_re");
        if (auto v = get("bath.f_im")) f_im = detail::parse_list(*v, "bath.f_im");
        if (f_im.empty()) f_im.assign(f_re.size(), 0.0);
        if (f_re.size() != f_im.size())
            throw ConfigError("bath: f_re and f_im must have equal lengths");
        for (std::size_t k = 0; k < f_re.size(); ++k)
            cfg.bath.amplitudes.emplace_back(f_re[k], f_im[k]);
    }
    if (auto v = get("bath.theta")) cfg.bath.theta = detail::parse_scalar(*v, "bath.theta");

    if (auto v = get("initial.bloch")) {
        const auto bloch = detail::parse_list(*v, "initial.bloch");
        if (bloch.size() != 3) throw ConfigError("initial: bloch needs exactly 3 components");
        for (int i = 0; i < 3; ++i) cfg.bloch[i] = bloch[i];
    }

    if (auto v = get("grid.t_max")) cfg.t_max = detail::parse_scalar(*v, "grid.t_max");
    if (auto v = get("grid.steps"))
        cfg.steps = static_cast<int>(detail::parse_scalar(*v, "grid.steps"));

    if (auto v = get("run.method")) {
        if (*v == "closed_form") cfg.method = RunMethod::closed_form;
        else if (*v == "oracle") cfg.method = RunMethod::oracle;
        else if (*v == "both") cfg.method = RunMethod::both;
        else throw ConfigError("run: method must be closed_form, oracle or both");
    }
    if (auto v = get("run.seed"))
        cfg.seed = static_cast<std::uint64_t>(detail::parse_scalar(*v, "run.seed"));
    if (auto v = get("run.tolerance"))
        cfg.tolerance = detail::parse_scalar(*v, "run.tolerance");

    return cfg;
}

inline RunConfig load(const std::string& path) { return from_key_values(parse_file(path)); }

}  // namespace config
}  // namespace sbsim
