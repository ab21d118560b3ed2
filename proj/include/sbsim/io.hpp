// io.hpp — CSV time series and JSON summaries for the CLI.

#pragma once

#include "sbsim/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace sbsim::io {

/// Scientific notation, 17 significant digits (round-trip exact for doubles).
inline std::string format_number(double x) {
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(16) << x;
    return ss.str();
}

inline const char* csv_header() {
    return "t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,"
           "rho11_re,rho11_im,sx,sy,sz,coherence_abs,purity,parity_J,method";
}

inline void write_csv_row(std::ostream& out, double t, const Eigen::Matrix2cd& rho,
                          const Observables& obs, const std::string& method) {
    out << format_number(t);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            out << ',' << format_number(rho(i, j).real()) << ','
                << format_number(rho(i, j).imag());
    out << ',' << format_number(obs.sx) << ',' << format_number(obs.sy) << ','
        << format_number(obs.sz) << ',' << format_number(obs.coherence_abs) << ','
        << format_number(obs.purity) << ',' << format_number(obs.parity_J) << ','
        << method << '\n';
}

inline void write_series_csv(const std::string& path,
                             const std::vector<std::pair<std::string, EvolutionResult>>& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << csv_header() << '\n';
    for (const auto& [method, result] : series)
        for (std::size_t i = 0; i < result.times.size(); ++i)
            write_csv_row(out, result.times[i], result.reduced_states[i],
                          result.observables[i], method);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["model"]["alpha"] = cfg.params.alpha;
    j["model"]["beta"] = cfg.params.beta;
    for (std::size_t k = 0; k < cfg.params.modes.size(); ++k) {
        j["model"]["omega"].push_back(cfg.params.modes[k].omega);
        j["model"]["g_re"].push_back(cfg.params.modes[k].g.real());
        j["model"]["g_im"].push_back(cfg.params.modes[k].g.imag());
        j["model"]["cutoff"].push_back(cfg.params.space.cutoffs[k]);
    }
    j["bath"]["kind"] = cfg.bath.kind;
    if (cfg.bath.kind == "thermal") j["bath"]["theta"] = cfg.bath.theta;
    j["initial"]["bloch"] = {cfg.bloch[0], cfg.bloch[1], cfg.bloch[2]};
    j["grid"]["t_max"] = cfg.t_max;
    j["grid"]["steps"] = cfg.steps;
    j["run"]["method"] = cfg.method == RunMethod::closed_form ? "closed_form"
                         : cfg.method == RunMethod::oracle    ? "oracle"
                                                              : "both";
    j["run"]["seed"] = cfg.seed;
    j["run"]["tolerance"] = cfg.tolerance;
    return j;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sbsim::io
