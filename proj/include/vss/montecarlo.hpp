#ifndef VSS_MONTECARLO_HPP
#define VSS_MONTECARLO_HPP

#include "vss/kernelops.hpp"

#include <cstdint>

namespace vss {

struct McConfig {
    long paths = 100000;
    int steps = 500;
    std::uint64_t seed = 1;
    bool antithetic = true;

    void validate() const {
        if (paths < 2) throw ConfigError("McConfig: paths must be >= 2");
        if (steps < 2) throw ConfigError("McConfig: steps must be >= 2");
        if (antithetic && paths % 2 != 0)
            throw ConfigError("McConfig: antithetic pairing needs an even path count");
        if (steps > 10000 || paths > 10000000 ||
            static_cast<double>(paths) * steps > 2.0e9)
            throw ConfigError("McConfig: paths*steps exceeds the resource limit");
    }
};

struct McResult {
    double price = 0.0;
    double stderr_ = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct McComplexResult {
    Complex mean{0.0, 0.0};
    double stderr_re = 0.0;
    double stderr_im = 0.0;
};

struct McTerminals {
    Vector log_spot;           // log S_T per path
    Vector integrated_variance; // left-point Riemann sum of X^2
};

enum class Payoff { call, put };

/**
 * Exact-covariance simulation of the Volterra volatility via the
 * integrated-kernel convolution weights of the discretization (row j of K_n
 * over the step width), plus log-Euler evolution of the spot.
 */
McTerminals simulate_terminals(const ModelParams& params, const McConfig& config);

// Monte Carlo option price with a 95% confidence interval.
McResult mc_price(const ModelParams& params, const McConfig& config, double strike,
                  Payoff payoff);

// Sample mean of exp(w * int X^2 ds) for Re(w) <= 0, componentwise stderr.
McComplexResult mc_integrated_variance_transform(const ModelParams& params,
                                                 const McConfig& config, Complex w);

} // namespace vss

#endif
