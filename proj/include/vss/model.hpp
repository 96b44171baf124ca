#ifndef VSS_MODEL_HPP
#define VSS_MODEL_HPP

#include "vss/errors.hpp"

#include <cmath>
#include <vector>

namespace vss {

/**
 * Parameters of the Volterra Stein-Stein model
 *
 *   dS_t = S_t X_t dB_t,
 *   X_t  = g0(t) + nu * int_0^t K(t,s) dW_s,   B = rho W + sqrt(1-rho^2) W_perp,
 *
 * with the fractional kernel K(t,s) = 1_{s<t} (t-s)^(H-1/2) / Gamma(H+1/2)
 * and input curve g0(t) = x0 + theta * t^(H+1/2) / Gamma(H+3/2).
 *
 * kappa is retained as a field for configuration fidelity but must be 0:
 * a nonzero mean reversion is absorbed into (g0, K) through the resolvent
 * kernel, which is outside the scope of this library.
 */
struct ModelParams {
    double kappa = 0.0;
    double nu = 0.2;    // vol of vol, >= 0
    double theta = 0.0; // drift level of the input curve
    double rho = 0.0;   // correlation in [-1, 1]
    double x0 = 0.1;    // initial volatility level
    double hurst = 0.5; // Hurst index in (0, 1)
    double s0 = 1.0;    // spot, > 0
    double maturity = 1.0;

    double alpha() const { return hurst + 0.5; }

    void validate() const {
        if (kappa != 0.0)
            throw ConfigError("ModelParams: kappa must be 0 (pre-transform g0 and K instead)");
        if (!(nu >= 0.0) || !std::isfinite(nu))
            throw ConfigError("ModelParams: nu must be finite and >= 0");
        if (!(hurst > 0.0) || !(hurst < 1.0))
            throw ConfigError("ModelParams: hurst must lie in (0, 1)");
        if (!(std::abs(rho) <= 1.0))
            throw ConfigError("ModelParams: rho must lie in [-1, 1]");
        if (!(s0 > 0.0)) throw ConfigError("ModelParams: s0 must be > 0");
        if (!(maturity > 0.0)) throw ConfigError("ModelParams: maturity must be > 0");
        if (!std::isfinite(theta) || !std::isfinite(x0))
            throw ConfigError("ModelParams: theta and x0 must be finite");
    }
};

// Uniform partition t_i = i*T/n of [0, T].
struct TimeGrid {
    int n = 0;
    double T = 0.0;

    TimeGrid() = default;
    TimeGrid(int steps, double horizon) : n(steps), T(horizon) { validate(); }

    void validate() const {
        if (n < 1) throw ConfigError("TimeGrid: n must be >= 1");
        if (!(T > 0.0)) throw ConfigError("TimeGrid: T must be > 0");
    }

    double dt() const { return T / n; }
    double knot(int i) const { return i * T / n; }
    std::vector<double> knots() const {
        std::vector<double> k(n + 1);
        for (int i = 0; i <= n; ++i) k[i] = knot(i);
        return k;
    }
};

} // namespace vss

#endif
