#ifndef VSS_KERNELOPS_HPP
#define VSS_KERNELOPS_HPP

#include "vss/cmatrix.hpp"
#include "vss/model.hpp"

#include <functional>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

namespace vss {

// Pointwise Volterra kernel K(t, s); must return 0 for s >= t.
using KernelFn = std::function<double(double t, double s)>;
using CurveFn = std::function<double(double t)>;

// Fractional (Riemann-Liouville) kernel 1_{s<t} (t-s)^(H-1/2) / Gamma(H+1/2).
KernelFn fractional_kernel(double hurst);

// Input curve x0 + theta * t^(H+1/2) / Gamma(H+3/2).
CurveFn fractional_input_curve(const ModelParams& p);

/**
 * All (u,w)-independent discretized objects on a uniform grid:
 *
 *   K_n      integrated-kernel weights, strictly lower triangular,
 *   Sigma_i  covariance matrices of the volatility restricted past t_i,
 *   SigmaDot_i  discretized time derivative of the covariance,
 *   g_n      input curve sampled at the left knots.
 *
 * The Sigma_i / SigmaDot_i families are materialized lazily per index and
 * cached: the determinant-based transform paths only touch i = 0, while the
 * trace path walks the whole family.  Cache fills are thread-safe.
 */
class KernelMatrices {
public:
    // Closed-form entries for the fractional kernel.
    static KernelMatrices fractional(const ModelParams& params, const TimeGrid& grid);

    // Generic numeric kernel; entries by adaptive Gauss-Kronrod quadrature.
    static KernelMatrices from_kernel(const ModelParams& params, const TimeGrid& grid,
                                      KernelFn kernel, CurveFn g0, double quad_rel_tol = 1e-10);

    const ModelParams& params() const { return params_; }
    const TimeGrid& grid() const { return grid_; }
    int n() const { return grid_.n; }
    double dt() const { return grid_.dt(); }

    const Matrix& K() const { return k_; }
    const Vector& g() const { return g_; }
    const Matrix& sigma(int i) const;
    const Matrix& sigma_dot(int i) const;

    // Cached combinations used by the expanded Phi-tilde formula.
    const Matrix& k_plus_kt() const { return k_plus_kt_; }
    const Matrix& kkt() const { return kkt_; }

private:
    KernelMatrices(const ModelParams& params, const TimeGrid& grid);
    void finish_construction();

    Matrix build_sigma(int i) const;
    Matrix build_sigma_dot(int i) const;

    ModelParams params_;
    TimeGrid grid_;
    Matrix k_;
    Vector g_;
    Matrix k_plus_kt_;
    Matrix kkt_;

    // Fractional closed-form tables: pow_a_[m] = (m dt)^alpha,
    // pow_am1_[m] = (m dt)^(alpha-1), hyp_ the 2F1 values at p/q.
    bool fractional_ = false;
    std::vector<double> pow_a_;
    std::vector<double> pow_am1_;
    mutable std::vector<std::vector<double>> hyp_;
    mutable std::once_flag hyp_once_;

    // Generic-kernel path.
    KernelFn kernel_;
    double quad_tol_ = 1e-10;

    mutable std::vector<Matrix> sigma_cache_;
    mutable std::vector<Matrix> sigma_dot_cache_;
    mutable std::deque<std::once_flag> sigma_once_;
    mutable std::deque<std::once_flag> sigma_dot_once_;
};

} // namespace vss

#endif
