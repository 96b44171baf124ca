#ifndef VSS_CROSSING_HPP
#define VSS_CROSSING_HPP

#include "vss/transform.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vss {

// One localized crossing of the negative real axis by det(Phi_n).
struct Crossing {
    double lo = 0.0;
    double hi = 0.0;
    int direction = 0; // +1 anticlockwise (k increases), -1 clockwise
    double location() const { return 0.5 * (lo + hi); }
};

struct CrossingScanSpec {
    ScanAxis axis = ScanAxis::u;
    double fixed_real = 0.0; // real part of the scanned variable
    Complex other{0.0, 0.0}; // the non-scanned variable
    double upper = 10.0;
    double step = 0.05;
    std::optional<double> l_theta; // when set, step must satisfy step <= pi / l_theta
};

struct CrossingReport {
    ScanAxis axis = ScanAxis::u;
    double fixed_real = 0.0;
    std::vector<double> grid;
    std::vector<double> arg_det;
    std::vector<double> log_abs_det;
    std::vector<int> k_profile;
    std::vector<Crossing> crossings;
    std::optional<double> first_crossing;
    Vector spectrum; // eigenvalues of (T/n) Sigma_n at b = 0, descending
    std::vector<std::pair<double, double>> bounds; // (r, first-crossing upper bound)
};

// Descending eigenvalues of (T/n) * SigmaTilde_n for real b; tiny negative
// round-off is clipped to zero, anything below the -1e-12 gate is an error.
Vector spectrum(const KernelMatrices& mats, double b_real);

// theta = sum_k arctan(y_k / x_k) with x_k = 1 - 2 Re(a) lambda_k >= 1 and
// y_k = -2 Im(a) lambda_k; the accumulated angle of det(Phi_n) when b is real.
double theta_from_spectrum(const Vector& spectrum, Complex a);

// Tabulates arg(det Phi_n) along the scan, accumulates the rotation count,
// and localizes every wrap by bisection to width <= step/100.
CrossingReport scan_crossings(const KernelMatrices& mats, const CrossingScanSpec& spec);

// First-crossing upper bound, integrated variance case:
// tan(pi/N_r) * (1/(2r) - Re(w)) when at least three eigenvalues exceed r.
std::optional<double> bound_first_crossing_intvar(const Vector& spectrum, double r,
                                                  double re_w);

// First-crossing upper bound, log-price case (rho = 0 spectrum).  Defined
// when N_r >= 3 and the radicand is nonnegative.
std::optional<double> bound_first_crossing_logprice(const Vector& spectrum, double r,
                                                    double re_u);

// Lipschitz bound for the determinant argument along Im(w):
// L = 2 sum_k arctan(lambda_k / (1 - 2 Re(w) lambda_k)).
double lipschitz_bound_intvar(const Vector& spectrum, double re_w);

struct EmpiricalScan {
    ScanAxis axis = ScanAxis::u;
    double fixed_real = 0.5;
    Complex other{0.0, 0.0};
    double upper = 10.0;
};

/**
 * Empirical Lipschitz estimate for the determinant argument: stratified
 * finite-difference probes of |d arg / d node| with step shrinking until the
 * wrapped difference is trustworthy, refined around the maximum, scaled by
 * the safety factor.  Intended for the log-price case where no closed-form
 * bound is available.
 */
double lipschitz_estimate_empirical(const KernelMatrices& mats, const EmpiricalScan& scan,
                                    int probe_count = 16, double safety = 1.5,
                                    std::uint64_t seed = 0x5eed);

} // namespace vss

#endif
