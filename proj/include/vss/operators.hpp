#ifndef VSS_OPERATORS_HPP
#define VSS_OPERATORS_HPP

#include "vss/kernelops.hpp"

namespace vss {

/**
 * An evaluation point (u, w) of the joint transform
 * E[exp(u log(S_T/S_0) + w int_0^T X_s^2 ds)].
 *
 * The admissible domain is 0 <= Re(u) <= 1 and Re(w) <= 0; outside it the
 * operator inversions backing the transform are not guaranteed to exist.
 */
struct ArgPoint {
    Complex u{0.0, 0.0};
    Complex w{0.0, 0.0};

    void validate() const {
        if (!(u.real() >= 0.0) || !(u.real() <= 1.0))
            throw DomainError("ArgPoint: Re(u) must lie in [0, 1]");
        if (!(w.real() <= 0.0)) throw DomainError("ArgPoint: Re(w) must be <= 0");
    }
};

// a(u,w) = w + (u^2 - u)/2 and b(u) = rho*nu*u (kappa = 0).
std::pair<Complex, Complex> build_ab(const ArgPoint& point, const ModelParams& params);

// (I - b K_n)^{-1} Sigma_{n,i} (I - b K_n^T)^{-1}.
CMatrix build_sigma_tilde(const KernelMatrices& mats, Complex b, int i = 0);

// Phi_n = I - 2 a (T/n) SigmaTilde_n.
CMatrix build_Phi_n(const CMatrix& sigma_tilde, Complex a, const TimeGrid& grid);

// Psi_{n,i} = a (I - b K^T)^{-1} (I - 2 a (T/n) SigmaTilde_{n,i})^{-1} (I - b K)^{-1}.
CMatrix build_Psi_n_i(const KernelMatrices& mats, Complex a, Complex b, int i = 0);

// PhiTilde_n = I - b (K + K^T) + b^2 K K^T - 2 a (T/n) Sigma_n, the
// triangular-factor conjugation of Phi_n with identical determinant.
CMatrix build_Phi_tilde_n(const KernelMatrices& mats, Complex a, Complex b);

// The full (u,w)-dependent operator bundle.
struct OperatorSet {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    CMatrix sigma_tilde;
    CMatrix phi;
    CMatrix phi_tilde;
    CMatrix psi;
};

OperatorSet build_operator_set(const KernelMatrices& mats, const ArgPoint& point);

} // namespace vss

#endif
