#include "vss/kernelops.hpp"
#include "vss/quadrature.hpp"
#include "vss/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace vss {

KernelFn fractional_kernel(double hurst) {
    if (!(hurst > 0.0) || !(hurst < 1.0))
        throw ConfigError("fractional_kernel: hurst must lie in (0, 1)");
    double alpha = hurst + 0.5;
    double inv_gamma = 1.0 / gamma_fn(alpha);
    return [alpha, inv_gamma](double t, double s) {
        if (s >= t) return 0.0;
        return inv_gamma * std::pow(t - s, alpha - 1.0);
    };
}

CurveFn fractional_input_curve(const ModelParams& p) {
    double alpha = p.alpha();
    double coef = p.theta / gamma_fn(1.0 + alpha);
    double x0 = p.x0;
    return [x0, coef, alpha](double t) { return x0 + coef * std::pow(t, alpha); };
}

KernelMatrices::KernelMatrices(const ModelParams& params, const TimeGrid& grid)
    : params_(params), grid_(grid) {
    params_.validate();
    grid_.validate();
    int n = grid_.n;
    sigma_cache_.resize(n);
    sigma_dot_cache_.resize(n);
    sigma_once_.resize(n);
    sigma_dot_once_.resize(n);
}

void KernelMatrices::finish_construction() {
    k_plus_kt_ = k_ + k_.transpose();
    kkt_ = k_ * k_.transpose();
}

KernelMatrices KernelMatrices::fractional(const ModelParams& params, const TimeGrid& grid) {
    KernelMatrices m(params, grid);
    m.fractional_ = true;
    int n = grid.n;
    double dt = grid.dt();
    double alpha = params.alpha();
    double inv_gamma_1pa = 1.0 / gamma_fn(1.0 + alpha);

    m.pow_a_.resize(n + 1);
    m.pow_am1_.resize(n + 1);
    m.pow_a_[0] = 0.0;
    m.pow_am1_[0] = 0.0; // never used on the diagonal; the kernel vanishes there
    for (int mm = 1; mm <= n; ++mm) {
        double t = mm * dt;
        m.pow_a_[mm] = std::pow(t, alpha);
        m.pow_am1_[mm] = std::pow(t, alpha - 1.0);
    }

    // (K_n)_{jk} = 1_{k<=j-1} ((t_{j-1}-t_{k-1})^a - (t_{j-1}-t_k)^a) / Gamma(1+a)
    m.k_ = Matrix::Zero(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= j - 1; ++k)
            m.k_(j - 1, k - 1) = inv_gamma_1pa * (m.pow_a_[j - k] - m.pow_a_[j - k - 1]);

    m.g_ = Vector(n);
    for (int i = 0; i < n; ++i) m.g_[i] = params.x0 + params.theta * m.pow_a_[i] * inv_gamma_1pa;

    m.finish_construction();
    return m;
}

KernelMatrices KernelMatrices::from_kernel(const ModelParams& params, const TimeGrid& grid,
                                           KernelFn kernel, CurveFn g0, double quad_rel_tol) {
    KernelMatrices m(params, grid);
    m.kernel_ = std::move(kernel);
    m.quad_tol_ = quad_rel_tol;
    int n = grid.n;

    m.k_ = Matrix::Zero(n, n);
    for (int j = 1; j <= n; ++j) {
        double tj = grid.knot(j - 1);
        for (int k = 1; k <= j - 1; ++k) {
            auto f = [&](double s) { return m.kernel_(tj, s); };
            m.k_(j - 1, k - 1) = integrate_gk(f, grid.knot(k - 1), grid.knot(k), quad_rel_tol);
        }
    }

    m.g_ = Vector(n);
    for (int i = 0; i < n; ++i) m.g_[i] = g0(grid.knot(i));

    m.finish_construction();
    return m;
}

namespace {

// 0-based wrapper over the 1-based entry conventions.
inline int min1(int a, int b) { return a < b ? a : b; }
inline int max1(int a, int b) { return a < b ? b : a; }

} // namespace

Matrix KernelMatrices::build_sigma(int i) const {
    int n = grid_.n;
    Matrix out = Matrix::Zero(n, n);
    if (fractional_) {
        std::call_once(hyp_once_, [&] {
            // hyp_[q][p] = 2F1(1, 1-a; 1+a; p/q) for 1 <= p <= q <= n-1.
            double alpha = params_.alpha();
            hyp_.resize(n);
            for (int q = 1; q <= n - 1; ++q) {
                hyp_[q].resize(q + 1);
                for (int p = 1; p <= q; ++p)
                    hyp_[q][p] = hyp2f1_special(alpha, static_cast<double>(p) / q);
            }
        });
        double alpha = params_.alpha();
        double c = params_.nu * params_.nu / (gamma_fn(alpha) * gamma_fn(1.0 + alpha));
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= j; ++k) {
                int lo = min1(j, k), hi = max1(j, k);
                if (i >= lo - 1) continue; // indicator 1_{i < (j^k)-1}
                int p = lo - 1 - i, q = hi - 1 - i;
                double v = c * pow_a_[p] * pow_am1_[q] * hyp_[q][p];
                out(j - 1, k - 1) = v;
                out(k - 1, j - 1) = v;
            }
        }
    } else {
        double nu2 = params_.nu * params_.nu;
        double ti = grid_.knot(i);
        for (int j = 1; j <= n; ++j) {
            double tj = grid_.knot(j - 1);
            for (int k = 1; k <= j; ++k) {
                int lo = min1(j, k);
                if (i >= lo - 1) continue;
                double tk = grid_.knot(k - 1);
                double upper = grid_.knot(lo - 1);
                auto f = [&](double s) { return kernel_(tj, s) * kernel_(tk, s); };
                double v = nu2 * integrate_gk(f, ti, upper, quad_tol_);
                out(j - 1, k - 1) = v;
                out(k - 1, j - 1) = v;
            }
        }
    }
    return out;
}

Matrix KernelMatrices::build_sigma_dot(int i) const {
    int n = grid_.n;
    Matrix out = Matrix::Zero(n, n);
    if (fractional_) {
        double alpha = params_.alpha();
        double c = params_.nu * params_.nu / (gamma_fn(alpha) * gamma_fn(1.0 + alpha));
        // Row factor K(t_{j-1}, t_i) vanishes for j-1 <= i (Volterra kernel),
        // so the effective support is j >= i+2, k >= i+1.
        for (int j = i + 2; j <= n; ++j) {
            double row = pow_am1_[j - 1 - i];
            for (int k = i + 1; k <= n; ++k)
                out(j - 1, k - 1) = -c * row * (pow_a_[k - i] - pow_a_[k - 1 - i]);
        }
    } else {
        double nu2 = params_.nu * params_.nu;
        double ti = grid_.knot(i);
        std::vector<double> col(n + 1, 0.0);
        for (int k = i + 1; k <= n; ++k) {
            auto f = [&](double s) { return kernel_(s, ti); };
            col[k] = integrate_gk(f, grid_.knot(k - 1), grid_.knot(k), quad_tol_);
        }
        for (int j = i + 1; j <= n; ++j) {
            double row = kernel_(grid_.knot(j - 1), ti);
            if (row == 0.0) continue;
            for (int k = i + 1; k <= n; ++k) out(j - 1, k - 1) = -nu2 * row * col[k];
        }
    }
    return out;
}

const Matrix& KernelMatrices::sigma(int i) const {
    if (i < 0 || i >= grid_.n) throw DomainError("KernelMatrices::sigma: index out of range");
    std::call_once(sigma_once_[i], [&] { sigma_cache_[i] = build_sigma(i); });
    return sigma_cache_[i];
}

const Matrix& KernelMatrices::sigma_dot(int i) const {
    if (i < 0 || i >= grid_.n)
        throw DomainError("KernelMatrices::sigma_dot: index out of range");
    std::call_once(sigma_dot_once_[i], [&] { sigma_dot_cache_[i] = build_sigma_dot(i); });
    return sigma_dot_cache_[i];
}

} // namespace vss
