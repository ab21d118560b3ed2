// dynamics.hpp — initial states, density-matrix evolution and exact reduced
// qubit dynamics over a time grid.

#pragma once

#include "sbsim/propagator.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace sbsim {

struct QubitState {
    Eigen::Matrix2cd rho;

    static QubitState from_bloch(double rx, double ry, double rz) {
        const double len = std::sqrt(rx * rx + ry * ry + rz * rz);
        if (len > 1.0 + 1e-12)
            throw std::invalid_argument("QubitState: Bloch vector length must be <= 1");
        Eigen::Matrix2cd rho;
        rho << 0.5 * (1.0 + rz), 0.5 * Complex(rx, -ry),
               0.5 * Complex(rx, ry), 0.5 * (1.0 - rz);
        return {rho};
    }

    void validate(double tol = 1e-10) const {
        if ((rho - rho.adjoint()).norm() > tol)
            throw std::invalid_argument("QubitState: rho must be Hermitian");
        if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
            throw std::invalid_argument("QubitState: trace must be 1");
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol)
            throw std::invalid_argument("QubitState: rho must be positive semidefinite");
    }
};

struct BathState {
    Matrix rho_b;
    std::string kind;
};

struct Observables {
    double sx{0.0}, sy{0.0}, sz{0.0};
    double coherence_abs{0.0};
    double purity{0.0};
    double parity_J{0.0};  // <σx (x) P> of the total state
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<Eigen::Matrix2cd> reduced_states;
    std::vector<Observables> observables;
};

namespace dynamics {

inline BathState vacuum_state(const FockSpaceSpec& space) {
    const Eigen::Index dim = space.total_dim();
    Matrix rho = Matrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return {rho, "vacuum"};
}

/// Product Fock state |n_0 n_1 ...><...|.
inline BathState fock_state(const FockSpaceSpec& space,
                            const std::vector<Eigen::Index>& occupations) {
    if (static_cast<Eigen::Index>(occupations.size()) != space.num_modes())
        throw std::invalid_argument("fock_state: one occupation per mode required");
    Eigen::Index index = 0;
    for (Eigen::Index k = 0; k < space.num_modes(); ++k) {
        if (occupations[k] < 0 || occupations[k] >= space.cutoffs[k])
            throw std::invalid_argument("fock_state: occupation exceeds cutoff");
        index = index * space.cutoffs[k] + occupations[k];
    }
    const Eigen::Index dim = space.total_dim();
    Matrix rho = Matrix::Zero(dim, dim);
    rho(index, index) = 1.0;
    return {rho, "fock"};
}

/// Pure coherent state D_f|0><0|D_f†. Rejects amplitudes whose Poisson
/// weight beyond the cutoff exceeds `leak_tol` (truncated state would not
/// be normalized to the required accuracy).
inline BathState coherent_state(const FockSpaceSpec& space,
                                const std::vector<Complex>& amplitudes,
                                double leak_tol = 1e-8) {
    if (static_cast<Eigen::Index>(amplitudes.size()) != space.num_modes())
        throw std::invalid_argument("coherent_state: one amplitude per mode required");
    double leak = 0.0;
    for (Eigen::Index k = 0; k < space.num_modes(); ++k) {
        const double n_mean = std::norm(amplitudes[k]);
        double weight = std::exp(-n_mean), kept = weight;
        for (Eigen::Index n = 1; n < space.cutoffs[k]; ++n) {
            weight *= n_mean / static_cast<double>(n);
            kept += weight;
        }
        leak += 1.0 - kept;
    }
    if (leak > leak_tol)
        throw std::invalid_argument("coherent_state: truncation error above tolerance; "
                                    "raise the cutoff or lower |f|");
    // The displacement convention exp(f* a - f a†) sends |0> to the coherent
    // state of amplitude -f, so displace by -f to get amplitude +f.
    std::vector<Complex> negated(amplitudes.size());
    for (std::size_t k = 0; k < amplitudes.size(); ++k) negated[k] = -amplitudes[k];
    const Matrix d = fock::multimode_displacement(space, negated);
    Vector psi = d.col(0);
    psi.normalize();
    return {psi * psi.adjoint(), "coherent"};
}

inline BathState coherent_state(const FockSpaceSpec& space, Complex f,
                                double leak_tol = 1e-8) {
    return coherent_state(space, std::vector<Complex>(space.num_modes(), f), leak_tol);
}

/// Truncated Gibbs state exp(-θ H_B)/Z; θ in inverse energy units.
inline BathState thermal_state(const FockSpaceSpec& space, const std::vector<Mode>& modes,
                               double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("thermal_state: theta must be > 0");
    if (static_cast<Eigen::Index>(modes.size()) != space.num_modes())
        throw std::invalid_argument("thermal_state: one frequency per mode required");
    const Eigen::Index dim = space.total_dim();
    Eigen::VectorXd weights(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double energy = 0.0;
        for (Eigen::Index k = 0; k < space.num_modes(); ++k)
            energy += modes[k].omega *
                      static_cast<double>(fock::detail::occupation(space, i, k));
        weights(i) = std::exp(-theta * energy);
    }
    weights /= weights.sum();
    Matrix rho = Matrix::Zero(dim, dim);
    rho.diagonal() = weights.cast<Complex>();
    return {rho, "thermal"};
}

/// (ρ_S)_{ij} = sum_n <i,n|ρ|j,n> for the qubit-major ordering.
inline Eigen::Matrix2cd partial_trace(const Matrix& rho_total) {
    if (rho_total.rows() != rho_total.cols() || rho_total.rows() % 2 != 0)
        throw std::invalid_argument("partial_trace: expected a 2*D square matrix");
    const Eigen::Index d = rho_total.rows() / 2;
    Eigen::Matrix2cd rho_s = Eigen::Matrix2cd::Zero();
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            rho_s(i, j) = rho_total.block(i * d, j * d, d, d).trace();
    return rho_s;
}

namespace detail {

inline Observables observables_of(const Eigen::Matrix2cd& rho_s, const Matrix& rho_total,
                                  const Matrix& parity) {
    Observables o;
    o.sx = 2.0 * rho_s(0, 1).real();
    o.sy = -2.0 * rho_s(0, 1).imag();
    o.sz = (rho_s(0, 0) - rho_s(1, 1)).real();
    o.coherence_abs = std::abs(rho_s(0, 1));
    o.purity = (rho_s * rho_s).trace().real();
    const Eigen::Index d = parity.rows();
    // Tr((σx (x) P) ρ) with σx off-diagonal blocks.
    o.parity_J = ((parity * rho_total.bottomLeftCorner(d, d)).trace() +
                  (parity * rho_total.topRightCorner(d, d)).trace())
                     .real();
    return o;
}

}  // namespace detail

/// Exact reduced dynamics ρ_t = Tr_B(U_t ρ0 (x) ω_B U_t†) on a time grid.
/// The closed-form path requires beta = 0; the oracle path accepts any beta.
inline EvolutionResult reduced_dynamics(const ModelParams& p, const QubitState& rho0,
                                        const BathState& bath,
                                        const std::vector<double>& times,
                                        Method method = Method::closed_form) {
    p.validate();
    rho0.validate();
    if ((bath.rho_b - bath.rho_b.adjoint()).norm() > 1e-10 ||
        std::abs(bath.rho_b.trace() - Complex(1.0)) > 1e-10)
        throw std::invalid_argument("reduced_dynamics: bath state must be a density matrix");

    const Matrix rho_init = fock::kron(Matrix(rho0.rho), bath.rho_b);
    const Matrix parity = fock::parity(p.space);

    EvolutionResult result;
    result.times = times;
    result.reduced_states.reserve(times.size());
    result.observables.reserve(times.size());

    auto record = [&](const Matrix& u) {
        const Matrix rho_t = u * rho_init * u.adjoint();
        const Eigen::Matrix2cd rho_s = partial_trace(rho_t);
        result.reduced_states.push_back(rho_s);
        result.observables.push_back(detail::observables_of(rho_s, rho_t, parity));
    };

    if (method == Method::closed_form) {
        propagator::DressedSpectrum spectra(p);  // rejects beta != 0
        for (double t : times) record(spectra.at(t).matrix);
    } else {
        propagator::OracleSpectrum spectra(p);
        for (double t : times) record(spectra.at(t).matrix);
    }
    return result;
}

/// <σx (x) P>(t) series; constant for beta = 0 evolutions.
inline std::vector<double> parity_expectation_series(const EvolutionResult& result) {
    std::vector<double> series;
    series.reserve(result.observables.size());
    for (const auto& o : result.observables) series.push_back(o.parity_J);
    return series;
}

inline double parity_expectation_drift(const EvolutionResult& result) {
    const auto series = parity_expectation_series(result);
    if (series.empty()) return 0.0;
    double drift = 0.0;
    for (double v : series) drift = std::max(drift, std::abs(v - series.front()));
    return drift;
}

}  // namespace dynamics
}  // namespace sbsim
