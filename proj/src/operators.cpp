#include "vss/operators.hpp"

namespace vss {

std::pair<Complex, Complex> build_ab(const ArgPoint& point, const ModelParams& params) {
    point.validate();
    Complex a = point.w + 0.5 * (point.u * point.u - point.u);
    Complex b = params.rho * params.nu * point.u;
    return {a, b};
}

namespace {

// Stored strictly-lower matrix k scaled by -b; viewed with a unit diagonal
// it acts as (I - b K).
CMatrix resolvent_factor(const Matrix& k, Complex b) { return (-b) * k.cast<Complex>(); }

} // namespace

CMatrix build_sigma_tilde(const KernelMatrices& mats, Complex b, int i) {
    const Matrix& sig = mats.sigma(i);
    if (b == Complex(0.0, 0.0)) return sig.cast<Complex>();
    CMatrix f = resolvent_factor(mats.K(), b);
    auto tri = f.triangularView<Eigen::UnitLower>();
    CMatrix left = tri.solve(sig.cast<Complex>());
    CMatrix out = tri.solve(left.transpose()).transpose();
    return out;
}

CMatrix build_Phi_n(const CMatrix& sigma_tilde, Complex a, const TimeGrid& grid) {
    Eigen::Index n = sigma_tilde.rows();
    CMatrix phi = (-2.0 * a * grid.dt()) * sigma_tilde;
    phi += CMatrix::Identity(n, n);
    return phi;
}

CMatrix build_Psi_n_i(const KernelMatrices& mats, Complex a, Complex b, int i) {
    int n = mats.n();
    if (a == Complex(0.0, 0.0)) return CMatrix::Zero(n, n);
    CMatrix phi = build_Phi_n(build_sigma_tilde(mats, b, i), a, mats.grid());
    Eigen::PartialPivLU<CMatrix> lu(phi);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (lu.matrixLU()(k, k) == Complex(0.0, 0.0))
            throw DomainError("build_Psi_n_i: singular operator (point outside the domain)");
    }
    CMatrix f = resolvent_factor(mats.K(), b);
    auto tri = f.triangularView<Eigen::UnitLower>();
    CMatrix inner = lu.solve(tri.solve(CMatrix::Identity(n, n)));
    // Left factor (I - b K^T)^{-1} is the transposed solve.
    CMatrix psi = tri.solve(inner.transpose()).transpose();
    return a * psi;
}

CMatrix build_Phi_tilde_n(const KernelMatrices& mats, Complex a, Complex b) {
    int n = mats.n();
    CMatrix out = (-b) * mats.k_plus_kt().cast<Complex>();
    out += (b * b) * mats.kkt().cast<Complex>();
    out += (-2.0 * a * mats.dt()) * mats.sigma(0).cast<Complex>();
    out += CMatrix::Identity(n, n);
    return out;
}

OperatorSet build_operator_set(const KernelMatrices& mats, const ArgPoint& point) {
    OperatorSet set;
    std::tie(set.a, set.b) = build_ab(point, mats.params());
    set.sigma_tilde = build_sigma_tilde(mats, set.b, 0);
    set.phi = build_Phi_n(set.sigma_tilde, set.a, mats.grid());
    set.phi_tilde = build_Phi_tilde_n(mats, set.a, set.b);
    set.psi = build_Psi_n_i(mats, set.a, set.b, 0);
    return set;
}

} // namespace vss
