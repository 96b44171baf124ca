#include "vss/specfun.hpp"
#include "vss/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>

namespace vss {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    // Valid for x >= 0.5.
    double acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (x - 1.0 + k);
    double t = x + 6.5; // x + g - 0.5
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("gamma_fn: argument must be finite and > 0");
    if (x < 0.5) return lanczos_gamma(x + 1.0) / x;
    return lanczos_gamma(x);
}

namespace {

// Direct series for 2F1(1, 1-alpha; 1+alpha; x). All terms past the first
// share the sign of (1-alpha), so the sum is cancellation-free. The tail is
// bounded by a geometric series with ratio x, which drives the stop rule.
double hyp_series(double alpha, double x, long max_terms) {
    double sum = 1.0;
    double term = 1.0;
    for (long n = 0; n < max_terms; ++n) {
        term *= (n + 1.0 - alpha) / (n + 1.0 + alpha) * x;
        sum += term;
        double tail_bound = std::abs(term) * x / (1.0 - x);
        if (tail_bound <= 1e-17 * std::abs(sum)) return sum;
    }
    throw NumericalError("hyp2f1_special: series did not converge");
}

// Connection formula toward the x = 1 expansion, for y = 1 - x small.
// With s = 2*alpha - 1:
//   F(x) = (alpha/s) * 2F1(1, 1-alpha; 2-2*alpha; y) + B * y^s * x^(-alpha),
//   B = -Gamma(1+alpha) * Gamma(alpha) * sin(pi*alpha) / (sin(pi*s) * Gamma(1+s)).
double hyp_connection(double alpha, double x) {
    double s = 2.0 * alpha - 1.0;
    double y = 1.0 - x;
    double f1 = 1.0;
    double term = 1.0;
    for (int n = 0; n < 200; ++n) {
        term *= (n + 1.0 - alpha) / (n + 2.0 - 2.0 * alpha) * y;
        f1 += term;
        if (std::abs(term) <= 1e-18 * std::abs(f1)) break;
    }
    double b = -gamma_fn(1.0 + alpha) * gamma_fn(alpha) * std::sin(kPi * alpha) /
               (std::sin(kPi * s) * gamma_fn(1.0 + s));
    return alpha / s * f1 + b * std::pow(y, s) * std::pow(x, -alpha);
}

} // namespace

double hyp2f1_special(double alpha, double x) {
    if (!(alpha > 0.5) || !(alpha < 1.5))
        throw DomainError("hyp2f1_special: alpha must lie in (1/2, 3/2)");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw DomainError("hyp2f1_special: x must lie in [0, 1]");
    if (alpha == 1.0 || x == 0.0) return 1.0;
    double s = 2.0 * alpha - 1.0;
    if (x == 1.0) return alpha / s;
    if (x <= 0.9) return hyp_series(alpha, x, 2000);
    // Near-integer s makes the connection coefficients blow up pairwise;
    // fall back to the plain series there (slow but stable).
    bool degenerate = (s < 0.08) || (std::abs(s - 1.0) < 0.08) || (s > 1.92);
    if (!degenerate) return hyp_connection(alpha, x);
    return hyp_series(alpha, x, 4000000);
}

QuadratureRule gauss_laguerre(int degree) {
    if (degree < 1 || degree > 256)
        throw ConfigError("gauss_laguerre: degree must be in [1, 256]");
    // Jacobi matrix of the Laguerre recurrence: diag 2k+1, subdiag k.
    Eigen::VectorXd diag(degree), sub(std::max(degree - 1, 1));
    for (int k = 0; k < degree; ++k) diag[k] = 2.0 * k + 1.0;
    for (int k = 1; k < degree; ++k) sub[k - 1] = k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(degree - 1, 0)),
                              Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw NumericalError("gauss_laguerre: tridiagonal eigensolver failed");

    QuadratureRule rule;
    rule.degree = degree;
    rule.nodes.resize(degree);
    rule.weights.resize(degree);
    rule.log_weights.resize(degree);
    for (int j = 0; j < degree; ++j) {
        rule.nodes[j] = es.eigenvalues()[j]; // ascending
        double v0 = std::abs(es.eigenvectors()(0, j));
        rule.log_weights[j] = 2.0 * std::log(v0); // mu_0 = 1
        rule.weights[j] = v0 * v0;
    }
    return rule;
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double norm_inv_cdf(double p) {
    // Wichura's algorithm AS 241 (PPND16).
    if (!(p > 0.0) || !(p < 1.0))
        throw DomainError("norm_inv_cdf: p must lie in (0, 1)");
    double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        double r = 0.180625 - q * q;
        double num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                           6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                         1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                       1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        double den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                           3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                         5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                       4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                           2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                         3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                       4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                           1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                         6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                       2.05319162663775882187e0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                           1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                         2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                       5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                           1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                         1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                       5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return q < 0.0 ? -val : val;
}

} // namespace vss
