// model.hpp — spin-boson Hamiltonian assembly (tensor and block-operator form),
// Riccati residual, similarity-transform diagonalization, constant of motion.

#pragma once

#include "sbsim/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sbsim {

struct Mode {
    double omega{1.0};
    Complex g{0.0};
};

/// Physical parameters. Units: hbar = 1; alpha, beta, omega_k, |g_k| share
/// one energy unit; times carry 1/energy.
struct ModelParams {
    double alpha{0.0};  // tunneling
    double beta{0.0};   // level splitting
    std::vector<Mode> modes;
    FockSpaceSpec space;

    void validate() const {
        if (!(std::isfinite(alpha) && alpha >= 0.0))
            throw std::invalid_argument("ModelParams: alpha must be finite and >= 0");
        if (!(std::isfinite(beta) && beta >= 0.0))
            throw std::invalid_argument("ModelParams: beta must be finite and >= 0");
        if (modes.empty())
            throw std::invalid_argument("ModelParams: at least one mode required");
        for (const auto& m : modes) {
            if (!(std::isfinite(m.omega) && m.omega > 0.0))
                throw std::invalid_argument("ModelParams: every omega_k must be > 0");
            if (!std::isfinite(m.g.real()) || !std::isfinite(m.g.imag()))
                throw std::invalid_argument("ModelParams: g_k must be finite");
        }
        space.validate();
        if (static_cast<Eigen::Index>(modes.size()) != space.num_modes())
            throw std::invalid_argument("ModelParams: one cutoff per mode required");
    }
};

/// Block form of the Hamiltonian: [[h_plus, alpha],[alpha, h_minus]] with
/// h_plus = H_B + V + beta, h_minus = H_B - V - beta.
struct BlockHamiltonian {
    Matrix h_plus;
    Matrix h_minus;
    double alpha{0.0};

    Eigen::Index block_dim() const { return h_plus.rows(); }
};

namespace model {

inline Matrix bath_hamiltonian(const ModelParams& p) {
    const Eigen::Index dim = p.space.total_dim();
    Matrix hb = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < p.space.num_modes(); ++k)
        hb += p.modes[k].omega * fock::number(p.space, k);
    return hb;
}

inline Matrix coupling_operator(const ModelParams& p) {
    const Eigen::Index dim = p.space.total_dim();
    Matrix v = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < p.space.num_modes(); ++k) {
        const Matrix a = fock::annihilation(p.space, k);
        v += std::conj(p.modes[k].g) * a + p.modes[k].g * a.adjoint();
    }
    return v;
}

inline BlockHamiltonian assemble_block(const ModelParams& p) {
    p.validate();
    const Matrix hb = bath_hamiltonian(p);
    const Matrix v = coupling_operator(p);
    const Matrix id = Matrix::Identity(hb.rows(), hb.cols());
    return {hb + v + p.beta * id, hb - v - p.beta * id, p.alpha};
}

/// Full Hamiltonian on C^2 (x) F: (beta σz + alpha σx) (x) I + I (x) H_B + σz (x) V.
/// The qubit index is the slow index, so the matrix has the block layout
/// [[h_plus, alpha],[alpha, h_minus]].
inline Matrix assemble_total(const ModelParams& p) {
    p.validate();
    const Eigen::Index d = p.space.total_dim();
    const Matrix hb = bath_hamiltonian(p);
    const Matrix v = coupling_operator(p);
    const Matrix id = Matrix::Identity(d, d);

    Matrix h = Matrix::Zero(2 * d, 2 * d);
    h.topLeftCorner(d, d) = hb + v + p.beta * id;
    h.bottomRightCorner(d, d) = hb - v - p.beta * id;
    h.topRightCorner(d, d) = p.alpha * id;
    h.bottomLeftCorner(d, d) = p.alpha * id;
    return h;
}

/// Frobenius norm of the Riccati residual alpha X^2 + X h_plus - h_minus X - alpha.
inline double riccati_residual(const Matrix& x, const BlockHamiltonian& bh) {
    const Eigen::Index d = bh.block_dim();
    if (x.rows() != d || x.cols() != d)
        throw std::invalid_argument("riccati_residual: dimension mismatch");
    const Matrix id = Matrix::Identity(d, d);
    const Matrix r = bh.alpha * x * x + x * bh.h_plus - bh.h_minus * x - bh.alpha * id;
    return r.norm();
}

struct SimilarityResult {
    Matrix diagonalized;  // S^-1 H S
    Matrix s;
    Matrix s_inverse;
};

/// Block-diagonalization by S = [[1, -X†],[X, 1]]; requires X to solve the
/// Riccati equation to within `tol` (relative to ||h_plus||_F).
inline SimilarityResult similarity_transform(const BlockHamiltonian& bh, const Matrix& x,
                                             double tol = 1e-10) {
    const Eigen::Index d = bh.block_dim();
    const double residual = riccati_residual(x, bh);
    if (residual > tol * std::max(1.0, bh.h_plus.norm()))
        throw std::invalid_argument("similarity_transform: X is not a Riccati solution");

    const Matrix id = Matrix::Identity(d, d);
    Matrix s(2 * d, 2 * d);
    s.topLeftCorner(d, d) = id;
    s.topRightCorner(d, d) = -x.adjoint();
    s.bottomLeftCorner(d, d) = x;
    s.bottomRightCorner(d, d) = id;

    Eigen::PartialPivLU<Matrix> lu(s);
    const Matrix s_inv = lu.solve(Matrix::Identity(2 * d, 2 * d));
    if ((s * s_inv - Matrix::Identity(2 * d, 2 * d)).norm() > 1e-8 * s.norm())
        throw std::runtime_error("similarity_transform: S numerically singular");

    Matrix h(2 * d, 2 * d);
    h.topLeftCorner(d, d) = bh.h_plus;
    h.bottomRightCorner(d, d) = bh.h_minus;
    h.topRightCorner(d, d) = bh.alpha * id;
    h.bottomLeftCorner(d, d) = bh.alpha * id;

    return {s_inv * h * s, s, s_inv};
}

/// ||[σx (x) P, H_SB]||_F. Zero (to rounding) iff beta = 0.
inline double parity_constant_of_motion(const ModelParams& p) {
    const Matrix h = assemble_total(p);
    const Matrix j = fock::kron((Matrix(2, 2) << 0, 1, 1, 0).finished(),
                                fock::parity(p.space));
    return (j * h - h * j).norm();
}

struct SpectrumPair {
    Eigen::VectorXd spectrum_plus;
    Eigen::VectorXd spectrum_minus;
    bool matched{false};
};

/// Sorted spectra of h_plus and h_minus. They coincide iff beta = 0
/// (unitary equivalence through P); for beta > 0 the minus spectrum is the
/// plus spectrum shifted by -2*beta.
inline SpectrumPair spectral_obstruction_check(const ModelParams& p, double tol = 1e-10) {
    const BlockHamiltonian bh = assemble_block(p);
    Eigen::SelfAdjointEigenSolver<Matrix> ep(bh.h_plus, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> em(bh.h_minus, Eigen::EigenvaluesOnly);
    SpectrumPair out{ep.eigenvalues(), em.eigenvalues(), false};
    const double scale = std::max(1.0, out.spectrum_plus.cwiseAbs().maxCoeff());
    out.matched = (out.spectrum_plus - out.spectrum_minus).cwiseAbs().maxCoeff() <= tol * scale;
    return out;
}

/// Reference-point shift H -> H + E with E = sum_k |g_k|^2 / omega_k.
inline BlockHamiltonian rescale_reference(const BlockHamiltonian& bh, const ModelParams& p) {
    double e = 0.0;
    for (const auto& m : p.modes) {
        if (m.omega <= 0.0)
            throw std::invalid_argument("rescale_reference: omega_k must be > 0");
        e += std::norm(m.g) / m.omega;
    }
    const Matrix shift = e * Matrix::Identity(bh.block_dim(), bh.block_dim());
    return {bh.h_plus + shift, bh.h_minus + shift, bh.alpha};
}

}  // namespace model
}  // namespace sbsim
