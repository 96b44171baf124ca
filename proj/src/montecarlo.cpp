#include "vss/montecarlo.hpp"
#include "vss/parallel.hpp"
#include "vss/philox.hpp"
#include "vss/specfun.hpp"

#include <cmath>
#include <vector>

namespace vss {

namespace {

// Fixed-topology pairwise summation: independent of thread count.
double pairwise_sum(const double* data, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += data[i];
        return s;
    }
    std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

struct MeanStderr {
    double mean;
    double se;
};

MeanStderr mean_and_stderr(const std::vector<double>& samples) {
    std::size_t m = samples.size();
    double mean = pairwise_sum(samples.data(), m) / static_cast<double>(m);
    std::vector<double> sq(m);
    for (std::size_t i = 0; i < m; ++i) {
        double d = samples[i] - mean;
        sq[i] = d * d;
    }
    double var = pairwise_sum(sq.data(), m) / (static_cast<double>(m) - 1.0);
    return {mean, std::sqrt(var / static_cast<double>(m))};
}

// Folds antithetic pairs into per-pair means when enabled, so the stderr is
// computed over independent samples.
std::vector<double> fold_pairs(const std::vector<double>& per_path, bool antithetic) {
    if (!antithetic) return per_path;
    std::vector<double> folded(per_path.size() / 2);
    for (std::size_t i = 0; i < folded.size(); ++i)
        folded[i] = 0.5 * (per_path[2 * i] + per_path[2 * i + 1]);
    return folded;
}

} // namespace

McTerminals simulate_terminals(const ModelParams& params, const McConfig& config) {
    params.validate();
    config.validate();

    int steps = config.steps;
    long paths = config.paths;
    double t_mat = params.maturity;
    double dt = t_mat / steps;
    double sqrt_dt = std::sqrt(dt);
    double rho = params.rho;
    double rho_perp = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    TimeGrid grid(steps, t_mat);
    KernelMatrices mats = KernelMatrices::fractional(params, grid);
    // Row j of K_n holds the integrated kernel over each step for time knot
    // t_j; dividing by dt turns it into left-point convolution weights.
    Matrix conv_t = (params.nu / dt) * mats.K().transpose(); // steps x steps, strictly upper
    const Vector& g = mats.g();

    McTerminals out;
    out.log_spot = Vector(paths);
    out.integrated_variance = Vector(paths);
    double log_s0 = std::log(params.s0);

    constexpr long kBlock = 256;
    long blocks = (paths + kBlock - 1) / kBlock;

    parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t blk) {
        long p0 = static_cast<long>(blk) * kBlock;
        long p1 = std::min(paths, p0 + kBlock);
        long rows = p1 - p0;

        Matrix dw(rows, steps);
        Matrix dwp(rows, steps);
        for (long r = 0; r < rows; ++r) {
            long p = p0 + r;
            std::uint64_t stream = config.antithetic ? static_cast<std::uint64_t>(p / 2)
                                                     : static_cast<std::uint64_t>(p);
            double sign = (config.antithetic && (p & 1)) ? -1.0 : 1.0;
            for (int k = 0; k < steps; ++k) {
                double z1 = norm_inv_cdf(philox::uniform(config.seed, stream, k));
                double z2 = norm_inv_cdf(
                    philox::uniform(config.seed, stream, static_cast<std::uint64_t>(steps) + k));
                dw(r, k) = sign * sqrt_dt * z1;
                dwp(r, k) = sign * sqrt_dt * z2;
            }
        }

        // X(r, j) = g(t_j) + sum_{k<j} conv(j,k) dW_k with the K_n weights.
        Matrix x(rows, steps);
        x.noalias() = dw * conv_t.triangularView<Eigen::StrictlyUpper>();
        x.rowwise() += g.transpose();

        for (long r = 0; r < rows; ++r) {
            double log_s = log_s0;
            double iv = 0.0;
            for (int j = 0; j < steps; ++j) {
                double xv = x(r, j);
                double db = rho * dw(r, j) + rho_perp * dwp(r, j);
                log_s += -0.5 * xv * xv * dt + xv * db;
                iv += xv * xv * dt;
            }
            out.log_spot[p0 + r] = log_s;
            out.integrated_variance[p0 + r] = iv;
        }
    });
    return out;
}

McResult mc_price(const ModelParams& params, const McConfig& config, double strike,
                  Payoff payoff) {
    if (!(strike > 0.0)) throw ConfigError("mc_price: strike must be > 0");
    McTerminals term = simulate_terminals(params, config);

    std::vector<double> payoffs(config.paths);
    for (long p = 0; p < config.paths; ++p) {
        double s = std::exp(term.log_spot[p]);
        payoffs[p] = payoff == Payoff::call ? std::max(s - strike, 0.0)
                                            : std::max(strike - s, 0.0);
    }
    auto [mean, se] = mean_and_stderr(fold_pairs(payoffs, config.antithetic));
    return {mean, se, mean - 1.96 * se, mean + 1.96 * se};
}

McComplexResult mc_integrated_variance_transform(const ModelParams& params,
                                                 const McConfig& config, Complex w) {
    if (w.real() > 0.0)
        throw DomainError("mc_integrated_variance_transform: Re(w) must be <= 0");
    McTerminals term = simulate_terminals(params, config);

    std::vector<double> re(config.paths), im(config.paths);
    for (long p = 0; p < config.paths; ++p) {
        Complex v = std::exp(w * term.integrated_variance[p]);
        re[p] = v.real();
        im[p] = v.imag();
    }
    auto [mean_re, se_re] = mean_and_stderr(fold_pairs(re, config.antithetic));
    auto [mean_im, se_im] = mean_and_stderr(fold_pairs(im, config.antithetic));
    McComplexResult out;
    out.mean = Complex(mean_re, mean_im);
    out.stderr_re = se_re;
    out.stderr_im = se_im;
    return out;
}

} // namespace vss
