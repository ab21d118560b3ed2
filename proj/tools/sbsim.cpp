// sbsim — spin-boson simulator CLI.
// Subcommands: verify (invariant suite), evolve (reduced dynamics time series),
// spectrum (dressed and full spectra).
// Exit codes: 0 success, 1 verification failure, 2 config/validation error,
// 3 I/O error.

#include "sbsim/io.hpp"
#include "sbsim/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace sbsim;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string method;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tolerance = 0.0;
    bool tolerance_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "path to the run configuration file")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--method", opts.method, "closed_form | oracle | both");
    cmd->add_option("--seed", opts.seed, "RNG seed for verification suites")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--tolerance", opts.tolerance, "override the default tolerance")
        ->each([&](const std::string&) { opts.tolerance_set = true; });
}

RunConfig load_config(const CommonOpts& opts) {
    RunConfig cfg = config::load(opts.config_path);
    if (!opts.method.empty()) {
        if (opts.method == "closed_form") cfg.method = RunMethod::closed_form;
        else if (opts.method == "oracle") cfg.method = RunMethod::oracle;
        else if (opts.method == "both") cfg.method = RunMethod::both;
        else throw ConfigError("method must be closed_form, oracle or both");
    }
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.tolerance_set) cfg.tolerance = opts.tolerance;
    cfg.validate();
    return cfg;
}

std::string method_name(Method m) {
    return m == Method::closed_form ? "closed_form" : "oracle";
}

int cmd_verify(const CommonOpts& opts) {
    const RunConfig cfg = load_config(opts);
    const VerifyReport report = verify::run_suite(cfg.params, cfg.seed);

    nlohmann::json jchecks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << "  measured=" << io::format_number(c.measured)
                  << "  threshold=" << io::format_number(c.threshold) << '\n';
        jchecks.push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"threshold", c.threshold},
                           {"pass", c.pass}});
    }
    if (opts.out_dir != ".") fs::create_directories(opts.out_dir);
    nlohmann::json summary;
    summary["config"] = io::config_to_json(cfg);
    summary["checks"] = jchecks;
    summary["all_pass"] = report.all_pass();
    io::write_json((fs::path(opts.out_dir) / "verify.json").string(), summary);

    std::cout << (report.all_pass() ? "all checks passed" : "verification FAILED") << '\n';
    return report.all_pass() ? 0 : 1;
}

std::vector<std::pair<std::string, EvolutionResult>> run_series(const RunConfig& cfg) {
    const QubitState rho0 = cfg.initial_state();
    const BathState bath = cfg.bath_state();
    const auto times = cfg.time_grid();
    std::vector<std::pair<std::string, EvolutionResult>> series;
    if (cfg.method == RunMethod::closed_form || cfg.method == RunMethod::both)
        series.emplace_back("closed_form", dynamics::reduced_dynamics(
                                               cfg.params, rho0, bath, times,
                                               Method::closed_form));
    if (cfg.method == RunMethod::oracle || cfg.method == RunMethod::both)
        series.emplace_back("oracle", dynamics::reduced_dynamics(cfg.params, rho0, bath,
                                                                 times, Method::oracle));
    return series;
}

double max_observable_delta(const EvolutionResult& a, const EvolutionResult& b) {
    double delta = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        delta = std::max(delta,
                         (a.reduced_states[i] - b.reduced_states[i]).cwiseAbs().maxCoeff());
        const auto &oa = a.observables[i], &ob = b.observables[i];
        for (double d : {oa.sx - ob.sx, oa.sy - ob.sy, oa.sz - ob.sz,
                         oa.coherence_abs - ob.coherence_abs, oa.purity - ob.purity,
                         oa.parity_J - ob.parity_J})
            delta = std::max(delta, std::abs(d));
    }
    return delta;
}

int cmd_evolve(const CommonOpts& opts) {
    const RunConfig cfg = load_config(opts);
    const auto series = run_series(cfg);

    nlohmann::json summary;
    summary["config"] = io::config_to_json(cfg);
    summary["tolerance"] = cfg.tolerance;
    if (series.size() == 2)
        summary["max_method_discrepancy"] = max_observable_delta(series[0].second,
                                                                 series[1].second);

    // Truncation-convergence report: rerun the first series with every
    // cutoff doubled and record the largest observable change.
    {
        RunConfig doubled = cfg;
        for (auto& d : doubled.params.space.cutoffs) d *= 2;
        const Method m =
            series.front().first == "oracle" ? Method::oracle : Method::closed_form;
        const EvolutionResult ref = dynamics::reduced_dynamics(
            doubled.params, doubled.initial_state(), doubled.bath_state(),
            doubled.time_grid(), m);
        summary["truncation_convergence"]["doubled_cutoffs_max_delta"] =
            max_observable_delta(series.front().second, ref);
    }

    fs::create_directories(opts.out_dir);
    io::write_series_csv((fs::path(opts.out_dir) / "evolution.csv").string(), series);
    io::write_json((fs::path(opts.out_dir) / "summary.json").string(), summary);
    std::cout << "wrote " << (fs::path(opts.out_dir) / "evolution.csv").string() << '\n';
    return 0;
}

int cmd_spectrum(const CommonOpts& opts) {
    // Spectra are defined for any beta, so skip RunConfig::validate's
    // closed-form/beta cross-check and validate the model only.
    RunConfig cfg = config::load(opts.config_path);
    if (opts.tolerance_set) cfg.tolerance = opts.tolerance;
    cfg.params.validate();

    const propagator::OracleSpectrum oracle(cfg.params);
    const Eigen::VectorXd full = oracle.eigenvalues();

    nlohmann::json summary;
    summary["config"] = io::config_to_json(cfg);

    fs::create_directories(opts.out_dir);
    std::ofstream out(fs::path(opts.out_dir) / "spectrum.csv");
    if (!out) throw std::runtime_error("cannot open spectrum.csv");

    if (cfg.params.beta == 0.0) {
        const propagator::DressedSpectrum dressed(cfg.params);
        Eigen::VectorXd merged(full.size());
        merged << dressed.eigenvalues_pp(), dressed.eigenvalues_pm();
        std::sort(merged.begin(), merged.end());
        const double discrepancy = (merged - full).cwiseAbs().maxCoeff();
        summary["max_matching_discrepancy"] = discrepancy;
        out << "index,full,dressed_union\n";
        for (Eigen::Index i = 0; i < full.size(); ++i)
            out << i << ',' << io::format_number(full(i)) << ','
                << io::format_number(merged(i)) << '\n';
        std::cout << "max matching discrepancy: " << io::format_number(discrepancy) << '\n';
    } else {
        summary["dressed_spectrum"] = "refused: requires beta = 0";
        out << "index,full\n";
        for (Eigen::Index i = 0; i < full.size(); ++i)
            out << i << ',' << io::format_number(full(i)) << '\n';
        std::cout << "beta > 0: dressed spectra refused, full spectrum written\n";
    }
    if (!out) throw std::runtime_error("write failed: spectrum.csv");
    io::write_json((fs::path(opts.out_dir) / "spectrum_summary.json").string(), summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spin-boson dynamics on truncated Fock spaces"};
    app.require_subcommand(1);

    CommonOpts verify_opts, evolve_opts, spectrum_opts;
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    auto* evolve_cmd = app.add_subcommand("evolve", "compute reduced qubit dynamics");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "dressed and full spectra");
    add_common(verify_cmd, verify_opts);
    add_common(evolve_cmd, evolve_opts);
    add_common(spectrum_cmd, spectrum_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (verify_cmd->parsed()) return cmd_verify(verify_opts);
        if (evolve_cmd->parsed()) return cmd_evolve(evolve_opts);
        if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
