// propagator.hpp — time-evolution operator, built two independent ways:
// the closed form from the dressed spectra (beta = 0 only) and a brute-force
// eigendecomposition of the full Hamiltonian.

#pragma once

#include "sbsim/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace sbsim {

enum class Method { closed_form, oracle };

struct Propagator {
    double time{0.0};
    Matrix matrix;  // 2*total_dim unitary
    Method method{Method::oracle};
};

namespace propagator {

namespace detail {

struct HermitianExp {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    explicit HermitianExp(const Matrix& h) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        eigenvalues = es.eigenvalues();
        eigenvectors = es.eigenvectors();
    }

    // exp(-i H t); exactly unitary up to rounding since |e^{-i λ t}| = 1.
    Matrix at(double t) const {
        const Vector phases =
            (Complex(0.0, -t) * eigenvalues.cast<Complex>().array()).exp();
        return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
    }
};

}  // namespace detail

/// Eigendecomposition of the full H_SB; valid for any alpha, beta.
/// Build once per parameter set, then evaluate at many times.
struct OracleSpectrum {
    detail::HermitianExp exp_h;

    explicit OracleSpectrum(const ModelParams& p) : exp_h(model::assemble_total(p)) {}

    const Eigen::VectorXd& eigenvalues() const { return exp_h.eigenvalues; }

    Propagator at(double t) const {
        if (!std::isfinite(t)) throw std::invalid_argument("propagator: t must be finite");
        return {t, exp_h.at(t), Method::oracle};
    }
};

/// Spectra of the dressed Hamiltonians H± ± αP (beta = 0 only).
/// Their union equals the spectrum of the full H_SB.
struct DressedSpectrum {
    detail::HermitianExp hp_plus;   // H+ + αP
    detail::HermitianExp hp_minus;  // H+ - αP
    detail::HermitianExp hm_plus;   // H- + αP
    detail::HermitianExp hm_minus;  // H- - αP
    Matrix parity;

    explicit DressedSpectrum(const ModelParams& p)
        : DressedSpectrum(check(p), fock::parity(p.space)) {}

    const Eigen::VectorXd& eigenvalues_pp() const { return hp_plus.eigenvalues; }
    const Eigen::VectorXd& eigenvalues_pm() const { return hm_minus.eigenvalues; }

    /// Closed-form propagator
    ///   U(t) = 1/2 [[U+(t), V+(t)P],[V-(t)P, U-(t)]]
    /// with U±(t) = e^{-i(H± + αP)t} + e^{-i(H± - αP)t} and V± the difference.
    Propagator at(double t) const {
        if (!std::isfinite(t)) throw std::invalid_argument("propagator: t must be finite");
        const Matrix epp = hp_plus.at(t);
        const Matrix epm = hp_minus.at(t);
        const Matrix emp = hm_plus.at(t);
        const Matrix emm = hm_minus.at(t);

        const Eigen::Index d = parity.rows();
        Matrix u(2 * d, 2 * d);
        u.topLeftCorner(d, d) = 0.5 * (epp + epm);
        u.topRightCorner(d, d) = 0.5 * (epp - epm) * parity;
        u.bottomLeftCorner(d, d) = 0.5 * (emp - emm) * parity;
        u.bottomRightCorner(d, d) = 0.5 * (emp + emm);
        return {t, u, Method::closed_form};
    }

  private:
    static BlockHamiltonian check(const ModelParams& p) {
        p.validate();
        if (p.beta != 0.0)
            throw std::invalid_argument("closed form requires beta = 0");
        return model::assemble_block(p);
    }

    DressedSpectrum(const BlockHamiltonian& bh, Matrix par)
        : hp_plus(bh.h_plus + bh.alpha * par),
          hp_minus(bh.h_plus - bh.alpha * par),
          hm_plus(bh.h_minus + bh.alpha * par),
          hm_minus(bh.h_minus - bh.alpha * par),
          parity(std::move(par)) {}
};

inline Propagator oracle_propagator(const ModelParams& p, double t) {
    return OracleSpectrum(p).at(t);
}

inline Propagator closed_form_propagator(const ModelParams& p, double t) {
    return DressedSpectrum(p).at(t);
}

inline DressedSpectrum dressed_spectrum(const ModelParams& p) { return DressedSpectrum(p); }

inline Vector propagate_state(const Propagator& u, const Vector& psi) {
    if (psi.size() != u.matrix.cols())
        throw std::invalid_argument("propagate_state: dimension mismatch");
    return u.matrix * psi;
}

}  // namespace propagator
}  // namespace sbsim
