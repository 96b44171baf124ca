#ifndef VSS_PRICING_HPP
#define VSS_PRICING_HPP

#include "vss/specfun.hpp"
#include "vss/transform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vss {

struct PriceRequest {
    double strike = 1.0;
    Method method = Method::hybrid;
    int quad_degree = 30;
    int n = 200;
    std::optional<int> n_coarse;       // hybrid proxy resolution (default 40)
    std::optional<double> l_theta;     // explicit Lipschitz bound for the pricing scan
    int lipschitz_probes = 16;         // empirical estimator settings
    double lipschitz_safety = 1.5;

    void validate() const {
        if (!(strike > 0.0)) throw ConfigError("PriceRequest: strike must be > 0");
        if (quad_degree < 1) throw ConfigError("PriceRequest: quad_degree must be >= 1");
        if (n < 1) throw ConfigError("PriceRequest: n must be >= 1");
    }
};

struct PriceTimings {
    double ms_matrices = 0.0;
    double ms_transform = 0.0;
    double ms_quadrature = 0.0;
};

struct PriceResult {
    double put = 0.0;
    double call = 0.0;
    std::vector<std::pair<double, Complex>> integrand; // (node, xi value)
    PriceTimings timings;
};

// Transform values at the Lewis contour points u = 1/2 + i*x_j, w = 0, one
// per Gauss-Laguerre node, shared across strikes.
std::vector<Complex> lewis_transform_nodes(const KernelMatrices& mats,
                                           const QuadratureRule& rule,
                                           const PriceRequest& request);

// Assembles the Lewis put price from precomputed node values.  The
// Gauss-Laguerre weight and the e^{x_j} damping factor are combined in log
// space so high degrees do not overflow.
PriceResult lewis_price_from_nodes(double s0, double strike, const QuadratureRule& rule,
                                   const std::vector<Complex>& xi_nodes);

// European put via the Lewis formula and Gauss-Laguerre quadrature; the
// call follows by parity (zero rates and dividends throughout).
PriceResult lewis_put(const ModelParams& params, const TimeGrid& grid,
                      const PriceRequest& request);

// Black-Scholes with sigma^2 * T = total_variance (zero rates); degenerate
// reference for nu = 0 checks.  Returns {put, call}.
std::pair<double, double> bs_reference(double s0, double strike, double total_variance);

struct PriceCell {
    double strike = 0.0;
    double maturity = 0.0;
    PriceResult result;
    std::string error; // empty on success
};

struct PriceTable {
    std::vector<PriceCell> cells;
};

// Batch pricing over strikes x maturities.  Kernel matrices are built once
// per maturity and transform node values are shared across strikes; failed
// cells record their error and the batch continues.
PriceTable price_surface(const ModelParams& params, const std::vector<double>& strikes,
                         const std::vector<double>& maturities, const PriceRequest& defaults);

} // namespace vss

#endif
