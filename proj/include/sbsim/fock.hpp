// fock.hpp — bosonic operators on truncated single- and multi-mode Fock spaces

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <stdexcept>
#include <vector>

namespace sbsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncated Fock space: mode k keeps levels 0..cutoffs[k]-1.
/// Multi-mode basis states are ordered lexicographically by (n0, n1, ...),
/// i.e. index = n0*d1*d2*... + n1*d2*... + ... (mode 0 is the leftmost
/// tensor factor).
struct FockSpaceSpec {
    std::vector<Eigen::Index> cutoffs;

    FockSpaceSpec() = default;
    explicit FockSpaceSpec(std::vector<Eigen::Index> d) : cutoffs(std::move(d)) {
        validate();
    }
    explicit FockSpaceSpec(Eigen::Index d) : cutoffs{d} { validate(); }

    Eigen::Index num_modes() const { return static_cast<Eigen::Index>(cutoffs.size()); }

    Eigen::Index total_dim() const {
        Eigen::Index dim = 1;
        for (auto d : cutoffs) dim *= d;
        return dim;
    }

    void validate() const {
        if (cutoffs.empty())
            throw std::invalid_argument("FockSpaceSpec: at least one mode required");
        for (auto d : cutoffs)
            if (d < 2)
                throw std::invalid_argument("FockSpaceSpec: every cutoff must be >= 2");
    }
};

namespace fock {

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace detail {

inline void check_mode(const FockSpaceSpec& space, Eigen::Index mode) {
    if (mode < 0 || mode >= space.num_modes())
        throw std::out_of_range("fock: mode index out of range");
}

// Single-mode annihilation matrix, a|n> = sqrt(n)|n-1>.
inline Matrix annihilation_1m(Eigen::Index d) {
    Matrix a = Matrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Embed a single-mode operator at position `mode` (identity elsewhere).
inline Matrix embed(const FockSpaceSpec& space, Eigen::Index mode, const Matrix& op) {
    Eigen::Index pre = 1, post = 1;
    for (Eigen::Index k = 0; k < mode; ++k) pre *= space.cutoffs[k];
    for (Eigen::Index k = mode + 1; k < space.num_modes(); ++k) post *= space.cutoffs[k];
    Matrix out = kron(Matrix::Identity(pre, pre), op);
    if (post > 1) out = kron(out, Matrix::Identity(post, post));
    return out;
}

// Occupation n_k of basis state `index` in mode `mode`.
inline Eigen::Index occupation(const FockSpaceSpec& space, Eigen::Index index,
                               Eigen::Index mode) {
    Eigen::Index stride = 1;
    for (Eigen::Index k = mode + 1; k < space.num_modes(); ++k) stride *= space.cutoffs[k];
    return (index / stride) % space.cutoffs[mode];
}

}  // namespace detail

inline Matrix annihilation(const FockSpaceSpec& space, Eigen::Index mode = 0) {
    detail::check_mode(space, mode);
    return detail::embed(space, mode, detail::annihilation_1m(space.cutoffs[mode]));
}

inline Matrix creation(const FockSpaceSpec& space, Eigen::Index mode = 0) {
    return annihilation(space, mode).adjoint();
}

/// Number operator a†a; diagonal with entries n on the mode factor.
inline Matrix number(const FockSpaceSpec& space, Eigen::Index mode = 0) {
    detail::check_mode(space, mode);
    const Eigen::Index dim = space.total_dim();
    Matrix n = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        n(i, i) = static_cast<double>(detail::occupation(space, i, mode));
    return n;
}

/// Displacement operator exp(f* a - f a†) as the matrix exponential of the
/// truncated generator. Unitary to within truncation tolerance; D_0 = I.
inline Matrix displacement(const FockSpaceSpec& space, Eigen::Index mode, Complex f) {
    detail::check_mode(space, mode);
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
        throw std::invalid_argument("displacement: f must be finite");
    const Matrix a = annihilation(space, mode);
    const Matrix gen = std::conj(f) * a - f * a.adjoint();
    return gen.exp();
}

/// Multi-mode displacement exp(A - A†) with A = sum_k f_k* a_k.
inline Matrix multimode_displacement(const FockSpaceSpec& space,
                                     const std::vector<Complex>& couplings) {
    if (static_cast<Eigen::Index>(couplings.size()) != space.num_modes())
        throw std::invalid_argument("multimode_displacement: one coupling per mode required");
    const Eigen::Index dim = space.total_dim();
    Matrix gen = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < space.num_modes(); ++k) {
        const Matrix a = annihilation(space, k);
        gen += std::conj(couplings[k]) * a - couplings[k] * a.adjoint();
    }
    return gen.exp();
}

/// Bosonic parity operator, diagonal with entries (-1)^(sum_k n_k).
/// Exactly Hermitian, unitary and involutive even under truncation.
inline Matrix parity(const FockSpaceSpec& space) {
    const Eigen::Index dim = space.total_dim();
    Matrix p = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index total = 0;
        for (Eigen::Index k = 0; k < space.num_modes(); ++k)
            total += detail::occupation(space, i, k);
        p(i, i) = (total % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

/// Phase operator exp(i φ a†a), diagonal with entries e^{iφn}.
inline Matrix phase_operator(const FockSpaceSpec& space, Eigen::Index mode, double phi) {
    detail::check_mode(space, mode);
    if (!std::isfinite(phi))
        throw std::invalid_argument("phase_operator: phi must be finite");
    const Eigen::Index dim = space.total_dim();
    Matrix p = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double n = static_cast<double>(detail::occupation(space, i, mode));
        p(i, i) = std::exp(Complex(0.0, phi * n));
    }
    return p;
}

}  // namespace fock
}  // namespace sbsim
