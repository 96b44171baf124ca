#ifndef VSS_CMATRIX_HPP
#define VSS_CMATRIX_HPP

#include <Eigen/Dense>

#include <complex>

namespace vss {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/**
 * A determinant in log-polar form: value = exp(log_abs) * exp(i * arg),
 * with arg the principal argument in (-pi, pi].
 *
 * The transform sign logic consumes log_abs and arg directly so it stays
 * valid when the plain complex value under- or overflows at large n.
 */
struct LogPolarDet {
    double log_abs = 0.0; // -inf encodes an exactly zero determinant
    double arg = 0.0;
    Complex value() const;
    bool is_zero() const;
};

// Eigendecomposition of a real symmetric matrix, eigenvalues descending.
struct SymEigen {
    Vector values;
    Matrix vectors; // column j pairs with values[j]
};

// Inverse via partially pivoted LU. An exactly singular pivot raises
// SingularMatrixError carrying the pivot index.
CMatrix lu_invert(const CMatrix& a);

// Determinant via partially pivoted LU, accumulated in log-magnitude and
// principal-argument form.
LogPolarDet lu_det(const CMatrix& a);

// Symmetric eigendecomposition (input symmetrized internally; it must be
// symmetric to within 1e-12 relative).
SymEigen sym_eigen(const Matrix& s);

// S^p for p = +1/2 or -1/2, S symmetric positive definite.
Matrix spd_power(const Matrix& s, double p);

} // namespace vss

#endif
