// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include "sbsim/config.hpp"
#include "sbsim/verify.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace sbsim;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, double measured, double threshold,
            bool pass) {
    std::printf("[%s] criterion %d: %s  (measured %.3e, threshold %.3e)\n",
                pass ? "PASS" : "FAIL", criterion, what.c_str(), measured, threshold);
    if (!pass) ++failures;
}

void check_max(int criterion, const std::string& what, double measured, double threshold) {
    report(criterion, what, measured, threshold, measured <= threshold);
}

void check_min(int criterion, const std::string& what, double measured, double threshold) {
    report(criterion, what, measured, threshold, measured >= threshold);
}

std::vector<ModelParams> seeded_sets() {
    std::vector<ModelParams> sets;
    std::mt19937_64 rng(20240901);
    for (int i = 0; i < 30; ++i) sets.push_back(verify::sample_params(rng, FockSpaceSpec(32)));
    for (int i = 0; i < 30; ++i)
        sets.push_back(verify::sample_params(rng, FockSpaceSpec({8, 8})));
    return sets;
}

// criteria 1 and 2: Riccati residual and block diagonalization
void criterion_riccati_and_diagonalization(const std::vector<ModelParams>& sets) {
    double worst_res = 0.0, worst_off = 0.0, worst_diag = 0.0;
    for (const auto& p : sets) {
        const auto bh = model::assemble_block(p);
        const Matrix parity = fock::parity(p.space);
        worst_res = std::max(worst_res,
                             model::riccati_residual(parity, bh) / bh.h_plus.norm());

        const auto sim = model::similarity_transform(bh, parity);
        const Matrix h = model::assemble_total(p);
        const Eigen::Index d = bh.block_dim();
        worst_off = std::max({worst_off,
                              sim.diagonalized.topRightCorner(d, d).norm() / h.norm(),
                              sim.diagonalized.bottomLeftCorner(d, d).norm() / h.norm()});
        worst_diag = std::max(
            {worst_diag,
             (sim.diagonalized.topLeftCorner(d, d) - (bh.h_plus + p.alpha * parity)).norm() /
                 h.norm(),
             (sim.diagonalized.bottomRightCorner(d, d) - (bh.h_minus - p.alpha * parity))
                     .norm() /
                 h.norm()});
    }
    check_max(1, "Riccati residual of the parity solution, 60 seeded sets", worst_res,
              1e-12);
    check_max(2, "off-diagonal blocks of S^-1 H S", worst_off, 1e-12);
    check_max(2, "diagonal blocks match the dressed Hamiltonians", worst_diag, 1e-12);
}

void criterion_propagator_equivalence(const std::vector<ModelParams>& sets) {
    double worst = 0.0;
    for (const auto& p : sets) {
        const propagator::DressedSpectrum closed(p);
        const propagator::OracleSpectrum oracle(p);
        const double dim = 2.0 * static_cast<double>(p.space.total_dim());
        for (double t : {0.1, 1.0, 5.0, 20.0})
            worst = std::max(worst,
                             (closed.at(t).matrix - oracle.at(t).matrix).norm() / dim);
    }
    check_max(3, "closed-form vs oracle propagator, t in {0.1,1,5,20}", worst, 1e-9);
}

void criterion_constant_of_motion(const std::vector<ModelParams>& sets) {
    double worst = 0.0;
    for (const auto& p : sets) {
        const double h_norm = model::assemble_total(p).norm();
        worst = std::max(worst, model::parity_constant_of_motion(p) / h_norm);
    }
    check_max(4, "[sigma_x x P, H] = 0 for beta = 0", worst, 1e-12);

    ModelParams broken;
    broken.alpha = 1.0;
    broken.beta = 0.5;
    broken.modes = {{1.0, Complex(1.0, 0.0)}};
    broken.space = FockSpaceSpec(32);
    const double h_norm = model::assemble_total(broken).norm();
    check_min(4, "[sigma_x x P, H] > 1e-3 ||H|| for beta = 0.5",
              model::parity_constant_of_motion(broken) / h_norm, 1e-3);

    // drift of <sigma_x x P> along a beta = 0 trajectory over t in [0, 20]
    const ModelParams p = sets.front();
    const QubitState rho0 = QubitState::from_bloch(0.3, 0.4, 0.5);
    const auto bath = dynamics::thermal_state(p.space, p.modes, 1.5);
    std::vector<double> times;
    for (int i = 0; i <= 40; ++i) times.push_back(0.5 * i);
    const auto result = dynamics::reduced_dynamics(p, rho0, bath, times);
    check_max(4, "<sigma_x x P> drift over t in [0,20]",
              dynamics::parity_expectation_drift(result), 1e-9);
}

void criterion_spectral_obstruction(const std::vector<ModelParams>& sets) {
    double worst_match = 0.0;
    for (const auto& p : sets) {
        const auto sp = model::spectral_obstruction_check(p);
        worst_match = std::max(
            worst_match, (sp.spectrum_plus - sp.spectrum_minus).cwiseAbs().maxCoeff());
    }
    check_max(5, "beta = 0: spectra of H+ and H- agree", worst_match, 1e-10);

    double worst_shift = 0.0;
    bool any_matched = false;
    for (int i = 0; i < 10; ++i) {
        ModelParams p = sets[i];
        p.beta = 0.5;
        const auto sp = model::spectral_obstruction_check(p);
        any_matched = any_matched || sp.matched;
        const Eigen::VectorXd shifted = sp.spectrum_plus.array() - 2.0 * p.beta;
        worst_shift = std::max(worst_shift,
                               (sp.spectrum_minus - shifted).cwiseAbs().maxCoeff());
    }
    check_max(5, "beta = 0.5: minus spectrum is plus spectrum shifted by -2 beta",
              worst_shift, 1e-10);
    report(5, "beta = 0.5: spectra reported as unmatched", any_matched ? 1.0 : 0.0, 0.0,
           !any_matched);
}

void criterion_reduced_dynamics() {
    std::vector<double> times;
    for (int i = 0; i <= 25; ++i) times.push_back(0.4 * i);

    struct Scenario {
        ModelParams p;
        QubitState rho0;
        BathState bath;
    };
    std::vector<Scenario> scenarios;
    {
        ModelParams p;
        p.alpha = 1.0;
        p.modes = {{1.0, Complex(0.4, 0.0)}};
        p.space = FockSpaceSpec(32);
        scenarios.push_back({p, QubitState::from_bloch(0, 0, 1),
                             dynamics::vacuum_state(p.space)});
    }
    {
        ModelParams p;
        p.alpha = 0.0;
        p.modes = {{1.0, Complex(0.4, 0.0)}};
        p.space = FockSpaceSpec(32);
        scenarios.push_back({p, QubitState::from_bloch(1, 0, 0),
                             dynamics::thermal_state(p.space, p.modes, 1.0)});
    }
    {
        ModelParams p;
        p.alpha = 0.8;
        p.modes = {{1.0, Complex(0.3, 0.0)}, {1.5, Complex(0.1, 0.2)}};
        p.space = FockSpaceSpec({8, 8});
        scenarios.push_back({p, QubitState::from_bloch(0.6, 0, 0.8),
                             dynamics::coherent_state(p.space, {Complex(0.3), Complex(0.1)})});
    }

    double worst_trace = 0.0, worst_eig = 0.0, worst_purity_hi = 0.0,
           worst_purity_lo = 1.0, worst_paths = 0.0, worst_pop = 0.0;
    for (const auto& sc : scenarios) {
        const auto closed = dynamics::reduced_dynamics(sc.p, sc.rho0, sc.bath, times,
                                                       Method::closed_form);
        const auto oracle =
            dynamics::reduced_dynamics(sc.p, sc.rho0, sc.bath, times, Method::oracle);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto& rho = closed.reduced_states[i];
            worst_trace = std::max(worst_trace, std::abs(rho.trace().real() - 1.0));
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
            worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
            const double purity = (rho * rho).trace().real();
            worst_purity_hi = std::max(worst_purity_hi, purity);
            worst_purity_lo = std::min(worst_purity_lo, purity);
            worst_paths = std::max(
                worst_paths,
                (rho - oracle.reduced_states[i]).cwiseAbs().maxCoeff());
            if (sc.p.alpha == 0.0)
                worst_pop = std::max(
                    worst_pop, std::abs((rho(0, 0) - sc.rho0.rho(0, 0)).real()));
        }
    }
    check_max(6, "trace preservation", worst_trace, 1e-10);
    check_min(6, "minimum eigenvalue of rho_t", worst_eig, -1e-9);
    check_max(6, "purity upper bound", worst_purity_hi, 1.0 + 1e-10);
    check_min(6, "purity lower bound", worst_purity_lo, 0.5);
    check_max(6, "alpha = 0 populations constant", worst_pop, 1e-10);
    check_max(6, "closed-form vs oracle reduced states", worst_paths, 1e-9);
}

void criterion_operator_identities() {
    const FockSpaceSpec space(30);
    const Matrix parity = fock::parity(space);
    const Matrix id = Matrix::Identity(30, 30);

    // Composition law measured on the lower half of the levels; near the
    // cutoff the truncated commutator defect is O(d) and the relation fails
    // by O(1) in full Frobenius norm (documented).
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.35, 0.35);
    double worst_comp = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Complex f(u(rng), u(rng)), g(u(rng), u(rng));
        const Complex phase = std::exp(Complex(0.0, std::imag(f * std::conj(g))));
        const Matrix lhs = fock::displacement(space, 0, f) * fock::displacement(space, 0, g);
        const Matrix rhs = phase * fock::displacement(space, 0, f + g);
        worst_comp = std::max(worst_comp, (lhs - rhs).topLeftCorner(15, 15).norm());
    }
    check_max(7, "Weyl composition law, |f|,|g| <= 0.5, lower levels", worst_comp, 1e-8);

    const double phi = 1.1;
    const Complex f(0.3, 0.2);
    const Matrix conj_phase = fock::phase_operator(space, 0, phi) *
                              fock::displacement(space, 0, f) *
                              fock::phase_operator(space, 0, -phi);
    check_max(7, "phase conjugation P_phi D_f P_{-phi} = D_{e^{i phi} f}",
              (conj_phase - fock::displacement(space, 0, std::exp(Complex(0, phi)) * f))
                  .norm(),
              1e-10);

    check_max(7, "P^2 = I exact", (parity * parity - id).norm(), 0.0);
    check_max(7, "P D_f P = D_{-f} exact",
              (parity * fock::displacement(space, 0, f) * parity -
               fock::displacement(space, 0, -f))
                  .norm(),
              0.0);
}

void criterion_truncation_convergence() {
    const std::vector<std::string> configs = {"default.cfg", "dephasing.cfg",
                                              "two_mode.cfg"};
    double worst = 0.0;
    for (const auto& name : configs) {
        const RunConfig cfg = config::load(std::string(SBSIM_CONFIG_DIR) + "/" + name);
        const Method m =
            cfg.method == RunMethod::oracle ? Method::oracle : Method::closed_form;
        const auto times = cfg.time_grid();
        const auto coarse = dynamics::reduced_dynamics(cfg.params, cfg.initial_state(),
                                                       cfg.bath_state(), times, m);
        RunConfig doubled = cfg;
        for (auto& d : doubled.params.space.cutoffs) d *= 2;
        const auto fine = dynamics::reduced_dynamics(doubled.params, doubled.initial_state(),
                                                     doubled.bath_state(), times, m);
        for (std::size_t i = 0; i < times.size(); ++i) {
            worst = std::max(worst, (coarse.reduced_states[i] - fine.reduced_states[i])
                                        .cwiseAbs()
                                        .maxCoeff());
            const auto &a = coarse.observables[i], &b = fine.observables[i];
            for (double d : {a.sx - b.sx, a.sy - b.sy, a.sz - b.sz,
                             a.coherence_abs - b.coherence_abs, a.purity - b.purity,
                             a.parity_J - b.parity_J})
                worst = std::max(worst, std::abs(d));
        }
    }
    check_max(8, "doubling every cutoff changes all observables by < 1e-6", worst, 1e-6);
}

}  // namespace

int main() {
    const auto sets = seeded_sets();
    criterion_riccati_and_diagonalization(sets);
    criterion_propagator_equivalence(sets);
    criterion_constant_of_motion(sets);
    criterion_spectral_obstruction(sets);
    criterion_reduced_dynamics();
    criterion_operator_identities();
    criterion_truncation_convergence();

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d check(s) FAILED\n", failures);
    return 1;
}
