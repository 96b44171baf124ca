#include "vss/pricing.hpp"
#include "vss/crossing.hpp"
#include "vss/parallel.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace vss {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

std::vector<Complex> lewis_transform_nodes(const KernelMatrices& mats,
                                           const QuadratureRule& rule,
                                           const PriceRequest& request) {
    std::size_t m = rule.nodes.size();
    std::vector<Complex> xi(m);

    auto point_at = [](double x) { return ArgPoint{Complex(0.5, x), Complex(0.0, 0.0)}; };

    switch (request.method) {
        case Method::trace:
            parallel_for(m, [&](std::size_t j) {
                xi[j] = eval_trace(mats, point_at(rule.nodes[j])).value;
            });
            break;
        case Method::det_raw:
            parallel_for(m, [&](std::size_t j) {
                xi[j] = eval_det_raw(mats, point_at(rule.nodes[j])).value;
            });
            break;
        case Method::prefactor_free:
            parallel_for(m, [&](std::size_t j) {
                xi[j] = eval_prefactor_free(mats, point_at(rule.nodes[j])).value;
            });
            break;
        case Method::hybrid: {
            int nc = request.n_coarse.value_or(40);
            KernelMatrices coarse =
                KernelMatrices::fractional(mats.params(), TimeGrid(nc, mats.grid().T));
            parallel_for(m, [&](std::size_t j) {
                xi[j] = eval_hybrid(mats, coarse, point_at(rule.nodes[j])).value;
            });
            break;
        }
        case Method::lipschitz: {
            double upper = rule.nodes.back() * (1.0 + 1e-12);
            double l = request.l_theta.value_or(0.0);
            if (l <= 0.0) {
                EmpiricalScan scan{ScanAxis::u, 0.5, Complex(0.0, 0.0), upper};
                l = lipschitz_estimate_empirical(mats, scan, request.lipschitz_probes,
                                                 request.lipschitz_safety);
                l = std::max(l, 1e-8); // nu = 0 gives a flat argument; keep one cell
            }
            LipschitzScan scan{ScanAxis::u, 0.5, Complex(0.0, 0.0), upper, l};
            LipschitzEvaluator ev(mats, scan);
            parallel_for(m, [&](std::size_t j) { xi[j] = ev.eval(rule.nodes[j]).value; });
            break;
        }
    }
    return xi;
}

PriceResult lewis_price_from_nodes(double s0, double strike, const QuadratureRule& rule,
                                   const std::vector<Complex>& xi_nodes) {
    if (xi_nodes.size() != rule.nodes.size())
        throw ConfigError("lewis_price_from_nodes: node count mismatch");
    double log_moneyness = std::log(s0 / strike);
    double integral = 0.0;
    PriceResult out;
    out.integrand.reserve(rule.nodes.size());
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        double x = rule.nodes[j];
        Complex twist = std::exp(Complex(0.0, x * log_moneyness));
        Complex f = twist * xi_nodes[j] / (x * x + 0.25);
        double damped_weight = std::exp(rule.log_weights[j] + x);
        integral += damped_weight * f.real();
        out.integrand.emplace_back(x, xi_nodes[j]);
    }
    out.put = strike - std::sqrt(s0 * strike) / std::numbers::pi * integral;
    out.call = out.put + s0 - strike;
    return out;
}

PriceResult lewis_put(const ModelParams& params, const TimeGrid& grid,
                      const PriceRequest& request) {
    request.validate();
    params.validate();

    auto t0 = Clock::now();
    KernelMatrices mats = KernelMatrices::fractional(params, grid);
    mats.sigma(0); // materialize the covariance before timing the transform
    double ms_mat = ms_since(t0);

    QuadratureRule rule = gauss_laguerre(request.quad_degree);

    t0 = Clock::now();
    std::vector<Complex> xi = lewis_transform_nodes(mats, rule, request);
    double ms_tr = ms_since(t0);

    t0 = Clock::now();
    PriceResult out = lewis_price_from_nodes(params.s0, request.strike, rule, xi);
    out.timings = {ms_mat, ms_tr, ms_since(t0)};
    return out;
}

std::pair<double, double> bs_reference(double s0, double strike, double total_variance) {
    if (!(s0 > 0.0) || !(strike > 0.0))
        throw DomainError("bs_reference: spot and strike must be > 0");
    if (!(total_variance >= 0.0)) throw DomainError("bs_reference: negative variance");
    if (total_variance == 0.0) {
        double call = std::max(s0 - strike, 0.0);
        double put = std::max(strike - s0, 0.0);
        return {put, call};
    }
    double sd = std::sqrt(total_variance);
    double d1 = (std::log(s0 / strike) + 0.5 * total_variance) / sd;
    double d2 = d1 - sd;
    double call = s0 * norm_cdf(d1) - strike * norm_cdf(d2);
    double put = call - s0 + strike;
    return {put, call};
}

PriceTable price_surface(const ModelParams& params, const std::vector<double>& strikes,
                         const std::vector<double>& maturities,
                         const PriceRequest& defaults) {
    PriceTable table;
    for (double t_mat : maturities) {
        if (!(t_mat > 0.0)) throw ConfigError("price_surface: maturities must be > 0");
        ModelParams p = params;
        p.maturity = t_mat;
        TimeGrid grid(defaults.n, t_mat);

        QuadratureRule rule;
        std::vector<Complex> xi;
        PriceTimings shared;
        std::string setup_error;
        try {
            auto t0 = Clock::now();
            KernelMatrices mats = KernelMatrices::fractional(p, grid);
            mats.sigma(0);
            shared.ms_matrices = ms_since(t0);
            rule = gauss_laguerre(defaults.quad_degree);
            t0 = Clock::now();
            xi = lewis_transform_nodes(mats, rule, defaults);
            shared.ms_transform = ms_since(t0);
        } catch (const Error& e) {
            setup_error = e.what();
        }

        for (double strike : strikes) {
            PriceCell cell;
            cell.strike = strike;
            cell.maturity = t_mat;
            if (!setup_error.empty()) {
                cell.error = setup_error;
                table.cells.push_back(std::move(cell));
                continue;
            }
            try {
                auto t0 = Clock::now();
                cell.result = lewis_price_from_nodes(p.s0, strike, rule, xi);
                cell.result.timings = shared;
                cell.result.timings.ms_quadrature = ms_since(t0);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

} // namespace vss
