// Independent reference computations for the unit tests. These deliberately
// avoid the library's own evaluation paths: brute-force series, Leibniz
// determinants, cofactor inverses, characteristic-polynomial eigenvalues and
// direct quadrature only.
#ifndef VSS_TESTS_ORACLES_HPP
#define VSS_TESTS_ORACLES_HPP

#include "vss/cmatrix.hpp"
#include "vss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

using vss::CMatrix;
using vss::Complex;
using vss::Matrix;
using vss::Vector;

// Gamma(x) by adaptive quadrature of t^(x-1) e^(-t); tail beyond t = 80 is
// below 1e-30 for the arguments used in tests.
inline double gamma_quadrature(double x) {
    auto f = [x](double t) { return std::pow(t, x - 1.0) * std::exp(-t); };
    return vss::integrate_gk(f, 0.0, 1.0, 1e-14, 20000) +
           vss::integrate_gk(f, 1.0, 80.0, 1e-14, 20000);
}

// Naive term-by-term summation of 2F1(1, 1-alpha; 1+alpha; x).
inline double hyp2f1_series(double alpha, double x, long terms = 2000000) {
    double sum = 1.0, term = 1.0;
    for (long n = 0; n < terms; ++n) {
        term *= (n + 1.0 - alpha) / (n + 1.0 + alpha) * x;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Leibniz determinant over all permutations (small matrices only).
inline Complex det_leibniz(const CMatrix& a) {
    int n = static_cast<int>(a.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex det(0.0, 0.0);
    do {
        // permutation sign by counting inversions
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= a(i, perm[i]);
        det += (inversions % 2 == 0 ? 1.0 : -1.0) * prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// Inverse via the adjugate (cofactor) formula.
inline CMatrix inverse_cofactor(const CMatrix& a) {
    int n = static_cast<int>(a.rows());
    Complex det = det_leibniz(a);
    CMatrix adj(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            CMatrix minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc) = a(r, c);
                    ++cc;
                }
                ++rr;
            }
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(j, i) = sign * det_leibniz(minor);
        }
    }
    return adj / det;
}

// Characteristic polynomial coefficients by Faddeev-LeVerrier:
// p(t) = t^n + c[0] t^(n-1) + ... + c[n-1].
inline std::vector<double> charpoly(const Matrix& a) {
    int n = static_cast<int>(a.rows());
    Matrix m = Matrix::Zero(n, n);
    std::vector<double> c(n);
    Matrix id = Matrix::Identity(n, n);
    double ck = 1.0;
    for (int k = 1; k <= n; ++k) {
        m = a * (m + ck * id);
        ck = -m.trace() / k;
        c[k - 1] = ck;
    }
    return c;
}

// All real roots of the (symmetric-matrix) characteristic polynomial by
// sign-change bisection on a dense sampling grid.
inline std::vector<double> charpoly_roots(const Matrix& a) {
    int n = static_cast<int>(a.rows());
    std::vector<double> c = charpoly(a);
    auto p = [&](double t) {
        double v = 1.0;
        for (int k = 0; k < n; ++k) v = v * t + c[k];
        return v;
    };
    double radius = 1.0;
    for (double ck : c) radius = std::max(radius, 2.0 * std::abs(ck));
    radius = std::min(radius, 1e6);
    std::vector<double> roots;
    const int samples = 200000;
    double prev_t = -radius, prev_v = p(prev_t);
    for (int i = 1; i <= samples; ++i) {
        double t = -radius + 2.0 * radius * i / samples;
        double v = p(t);
        if (prev_v == 0.0) roots.push_back(prev_t);
        else if (prev_v * v < 0.0) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                if (p(lo) * p(mid) <= 0.0) hi = mid;
                else lo = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_v = v;
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return roots;
}

// Per-factor principal-root product 1 / prod sqrt(1 - 2 w lam_k): the exact
// discrete transform of the integrated variance when g0 = 0.
inline Complex eigen_product_intvar(const Vector& lambdas, Complex w) {
    Complex out(1.0, 0.0);
    for (int i = 0; i < lambdas.size(); ++i)
        out /= std::sqrt(Complex(1.0, 0.0) - 2.0 * w * lambdas[i]);
    return out;
}

} // namespace oracle

#endif
