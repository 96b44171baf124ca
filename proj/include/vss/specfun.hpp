#ifndef VSS_SPECFUN_HPP
#define VSS_SPECFUN_HPP

#include <vector>

namespace vss {

/**
 * Gamma function for strictly positive real arguments.
 *
 * Lanczos rational approximation (g = 7, 9 terms) with the recurrence
 * Gamma(x) = Gamma(x+1)/x applied below x = 0.5. Relative accuracy is
 * better than 1e-13 on the range used by the covariance closed forms.
 */
double gamma_fn(double x);

/**
 * The Gauss hypergeometric value 2F1(1, 1-alpha; 1+alpha; x) for
 * alpha in (1/2, 3/2) and x in [0, 1].
 *
 * Direct series for x <= 0.9; for x in (0.9, 1] the linear connection
 * formula toward the x = 1 expansion, except in narrow strips where
 * 2*alpha-1 approaches an integer and the connection coefficients become
 * ill-conditioned (there the series is summed with a larger term cap).
 * At x = 1 the Gauss value alpha/(2*alpha-1) is returned directly.
 */
double hyp2f1_special(double alpha, double x);

// Gauss-Laguerre rule for the weight exp(-x) on [0, inf).
//
// log_weights carries log(w_j) computed before squaring the Golub-Welsch
// eigenvector component, so it stays finite at degrees where w_j itself
// underflows (roughly degree > 190).
struct QuadratureRule {
    int degree = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
};

/**
 * Gauss-Laguerre nodes and weights of the given degree (1..256), via the
 * symmetric-tridiagonal Golub-Welsch eigenproblem on the Laguerre
 * recurrence coefficients.
 */
QuadratureRule gauss_laguerre(int degree);

// Standard normal CDF.
double norm_cdf(double x);

// Standard normal quantile (Wichura AS241, full double precision).
double norm_inv_cdf(double p);

} // namespace vss

#endif
