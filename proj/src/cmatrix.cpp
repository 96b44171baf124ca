#include "vss/cmatrix.hpp"
#include "vss/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vss {

Complex LogPolarDet::value() const {
    if (is_zero()) return {0.0, 0.0};
    return std::exp(log_abs) * Complex(std::cos(arg), std::sin(arg));
}

bool LogPolarDet::is_zero() const { return std::isinf(log_abs) && log_abs < 0.0; }

namespace {

double wrap_angle(double a) {
    // Wrap to (-pi, pi].
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

} // namespace

CMatrix lu_invert(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("lu_invert: matrix must be square");
    Eigen::PartialPivLU<CMatrix> lu(a);
    const auto& packed = lu.matrixLU();
    for (Eigen::Index k = 0; k < packed.rows(); ++k) {
        if (packed(k, k) == Complex(0.0, 0.0))
            throw SingularMatrixError("lu_invert: exactly singular pivot",
                                      static_cast<int>(k));
    }
    return lu.inverse();
}

LogPolarDet lu_det(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("lu_det: matrix must be square");
    LogPolarDet out;
    if (a.rows() == 0) return out; // det of empty matrix is 1
    Eigen::PartialPivLU<CMatrix> lu(a);
    const auto& packed = lu.matrixLU();
    double log_abs = 0.0;
    double ang = 0.0;
    for (Eigen::Index k = 0; k < packed.rows(); ++k) {
        Complex pivot = packed(k, k);
        if (pivot == Complex(0.0, 0.0)) {
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.arg = 0.0;
            return out;
        }
        log_abs += std::log(std::abs(pivot));
        ang = wrap_angle(ang + std::arg(pivot));
    }
    if (lu.permutationP().determinant() < 0) ang = wrap_angle(ang + std::numbers::pi);
    out.log_abs = log_abs;
    out.arg = ang;
    return out;
}

SymEigen sym_eigen(const Matrix& s) {
    if (s.rows() != s.cols()) throw DomainError("sym_eigen: matrix must be square");
    double scale = s.cwiseAbs().maxCoeff();
    double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-12 * scale)
        throw DomainError("sym_eigen: input is not symmetric within tolerance");
    Matrix sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success)
        throw NumericalError("sym_eigen: eigensolver failed to converge");
    // Eigen sorts ascending; flip to descending.
    SymEigen out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

Matrix spd_power(const Matrix& s, double p) {
    if (p != 0.5 && p != -0.5)
        throw DomainError("spd_power: exponent must be +1/2 or -1/2");
    SymEigen es = sym_eigen(s);
    double scale = std::max(es.values.cwiseAbs().maxCoeff(), 1e-300);
    double lo = es.values.minCoeff();
    if (lo <= 1e-12 * scale)
        throw DefinitenessError("spd_power: matrix is not positive definite", lo);
    Vector powered = es.values.unaryExpr([p](double v) { return std::pow(v, p); });
    return es.vectors * powered.asDiagonal() * es.vectors.transpose();
}

} // namespace vss
