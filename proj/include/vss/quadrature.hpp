#ifndef VSS_QUADRATURE_HPP
#define VSS_QUADRATURE_HPP

#include "vss/errors.hpp"

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace vss {

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1].
constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename F>
void gk15(const F& f, double a, double b, double& result, double& err) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double fc = f(mid);
    double res_k = kGk15WeightsK[7] * fc;
    double res_g = kGk15WeightsG[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = half * kGk15Nodes[j];
        double fsum = f(mid - x) + f(mid + x);
        res_k += kGk15WeightsK[j] * fsum;
        if (j % 2 == 1) res_g += kGk15WeightsG[j / 2] * fsum;
    }
    result = res_k * half;
    err = std::abs((res_k - res_g) * half);
}

} // namespace detail

/**
 * Globally adaptive Gauss-Kronrod integration of f over [a, b].
 *
 * Intervals are refined worst-error-first, which concentrates work near
 * integrable endpoint singularities. Stops when the accumulated error
 * estimate drops below rel_tol * |integral| (plus a tiny absolute floor).
 */
template <typename F>
double integrate_gk(const F& f, double a, double b, double rel_tol = 1e-10,
                    int max_intervals = 4000) {
    struct Cell {
        double err, a, b, val;
        bool operator<(const Cell& o) const { return err < o.err; }
    };
    std::priority_queue<Cell> heap;
    double val, err;
    detail::gk15(f, a, b, val, err);
    heap.push({err, a, b, val});
    double total = val, total_err = err;
    int cells = 1;
    while (total_err > rel_tol * std::abs(total) + 1e-300 && cells < max_intervals) {
        Cell worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating-point resolution; keep its estimate.
            total_err -= worst.err;
            total += 0.0;
            heap.push({0.0, worst.a, worst.b, worst.val});
            continue;
        }
        double v1, e1, v2, e2;
        detail::gk15(f, worst.a, mid, v1, e1);
        detail::gk15(f, mid, worst.b, v2, e2);
        total += v1 + v2 - worst.val;
        total_err += e1 + e2 - worst.err;
        heap.push({e1, worst.a, mid, v1});
        heap.push({e2, mid, worst.b, v2});
        ++cells;
    }
    return total;
}

namespace detail {

template <typename F>
std::complex<double> simpson_rec(const F& f, double a, double b, std::complex<double> fa,
                                 std::complex<double> fm, std::complex<double> fb,
                                 std::complex<double> whole, double tol, int depth,
                                 int max_depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    std::complex<double> flm = f(lm), frm = f(rm);
    std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    std::complex<double> delta = left + right - whole;
    if (depth >= max_depth) {
        if (std::abs(delta) > 1e3 * tol)
            throw NumericalError("adaptive Simpson: max depth reached without convergence");
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace detail

// Adaptive Simpson for a smooth complex-valued integrand on [a, b].
template <typename F>
std::complex<double> integrate_simpson(const F& f, double a, double b, double tol = 1e-10,
                                       int max_depth = 30) {
    std::complex<double> fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

} // namespace vss

#endif
