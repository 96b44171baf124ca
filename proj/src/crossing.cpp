#include "vss/crossing.hpp"
#include "vss/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace vss {

namespace {

constexpr double kPi = std::numbers::pi;

ArgPoint scan_point(ScanAxis axis, double fixed_real, Complex other, double x) {
    Complex var(fixed_real, x);
    if (axis == ScanAxis::u) return ArgPoint{var, other};
    return ArgPoint{other, var};
}

bool is_wrap(double a0, double a1) { return std::abs(a1 - a0) > kPi; }

} // namespace

Vector spectrum(const KernelMatrices& mats, double b_real) {
    CMatrix st = build_sigma_tilde(mats, Complex(b_real, 0.0), 0);
    Matrix s = mats.dt() * st.real();
    double imag_norm = st.imag().cwiseAbs().maxCoeff();
    double real_norm = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
    if (imag_norm > 1e-12 * real_norm)
        throw DomainError("spectrum: operator not real (b must be real)");
    SymEigen es = sym_eigen(s);
    Vector vals = es.values;
    double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
    for (int i = 0; i < vals.size(); ++i) {
        if (vals[i] < -1e-12 * scale)
            throw NumericalError("spectrum: eigenvalue below the negative round-off gate");
        if (vals[i] < 0.0) vals[i] = 0.0;
    }
    return vals;
}

double theta_from_spectrum(const Vector& spec, Complex a) {
    if (a.real() > 0.0) throw DomainError("theta_from_spectrum: Re(a) must be <= 0");
    double theta = 0.0;
    for (int i = 0; i < spec.size(); ++i) {
        double x = 1.0 - 2.0 * a.real() * spec[i];
        if (x <= 0.0) throw DomainError("theta_from_spectrum: nonpositive x encountered");
        double y = -2.0 * a.imag() * spec[i];
        theta += std::atan(y / x);
    }
    return theta;
}

CrossingReport scan_crossings(const KernelMatrices& mats, const CrossingScanSpec& spec) {
    if (!(spec.step > 0.0)) throw ConfigError("scan_crossings: step must be > 0");
    if (!(spec.upper > 0.0)) throw ConfigError("scan_crossings: upper must be > 0");
    if (spec.l_theta && spec.step > kPi / *spec.l_theta + 1e-15)
        throw ConfigError("scan_crossings: step exceeds pi / l_theta");

    CrossingReport rep;
    rep.axis = spec.axis;
    rep.fixed_real = spec.fixed_real;

    long cells = static_cast<long>(std::floor(spec.upper / spec.step + 1e-12));
    rep.grid.resize(cells + 1);
    for (long i = 0; i <= cells; ++i) rep.grid[i] = i * spec.step;
    if (rep.grid.back() < spec.upper - 1e-12 * spec.upper) rep.grid.push_back(spec.upper);

    auto arg_at = [&](double x) {
        TransformValue tv = eval_det_raw(mats, scan_point(spec.axis, spec.fixed_real, spec.other, x));
        return std::pair<double, double>(tv.diag.det_arg, tv.diag.det_log_abs);
    };

    rep.arg_det.resize(rep.grid.size());
    rep.log_abs_det.resize(rep.grid.size());
    parallel_for(rep.grid.size(), [&](std::size_t i) {
        auto [arg, la] = arg_at(rep.grid[i]);
        rep.arg_det[i] = arg;
        rep.log_abs_det[i] = la;
    });

    rep.k_profile.assign(rep.grid.size(), 0);
    for (std::size_t i = 0; i + 1 < rep.grid.size(); ++i) {
        double jump = rep.arg_det[i + 1] - rep.arg_det[i];
        int delta = jump > kPi ? -1 : (jump < -kPi ? 1 : 0);
        rep.k_profile[i + 1] = rep.k_profile[i] + delta;
        if (delta != 0) {
            // Localize the wrap by bisection on the wrapped-jump predicate.
            double lo = rep.grid[i], hi = rep.grid[i + 1];
            double arg_lo = rep.arg_det[i];
            double width_target = spec.step / 100.0;
            while (hi - lo > width_target) {
                double mid = 0.5 * (lo + hi);
                double arg_mid = arg_at(mid).first;
                if (is_wrap(arg_lo, arg_mid)) {
                    hi = mid;
                } else {
                    lo = mid;
                    arg_lo = arg_mid;
                }
            }
            rep.crossings.push_back({lo, hi, delta});
        }
    }
    if (!rep.crossings.empty()) rep.first_crossing = rep.crossings.front().location();

    // Spectrum of the rho = 0 operator (b = 0) drives the theoretical bounds.
    rep.spectrum = spectrum(mats, 0.0);
    double lam_max = rep.spectrum.size() > 0 ? rep.spectrum[0] : 0.0;
    if (lam_max > 0.0) {
        double lam_lo = std::max(lam_max * 1e-6, 1e-300);
        for (int j = rep.spectrum.size() - 1; j >= 0; --j) {
            if (rep.spectrum[j] > 0.0) {
                lam_lo = std::max(lam_lo, rep.spectrum[j] * 0.5);
                break;
            }
        }
        for (int idx = 0; idx < 10; ++idx) {
            double t = idx / 9.0;
            double r = lam_max * std::pow(lam_lo / lam_max, t);
            std::optional<double> b =
                spec.axis == ScanAxis::w
                    ? bound_first_crossing_intvar(rep.spectrum, r, spec.fixed_real)
                    : bound_first_crossing_logprice(rep.spectrum, r, spec.fixed_real);
            if (b) rep.bounds.emplace_back(r, *b);
        }
    }
    return rep;
}

std::optional<double> bound_first_crossing_intvar(const Vector& spec, double r, double re_w) {
    if (!(r > 0.0)) throw DomainError("bound_first_crossing_intvar: r must be > 0");
    int n_r = 0;
    for (int i = 0; i < spec.size(); ++i)
        if (spec[i] > r) ++n_r;
    if (n_r < 3) return std::nullopt;
    return std::tan(kPi / n_r) * (0.5 / r - re_w);
}

std::optional<double> bound_first_crossing_logprice(const Vector& spec, double r, double re_u) {
    if (!(r > 0.0)) throw DomainError("bound_first_crossing_logprice: r must be > 0");
    int n_r = 0;
    for (int i = 0; i < spec.size(); ++i)
        if (spec[i] > r) ++n_r;
    if (n_r < 3) return std::nullopt;
    double half_b = std::abs(1.0 - 2.0 * re_u) / (2.0 * std::tan(kPi / n_r));
    double radicand = half_b * half_b - 4.0 * (1.0 / r + re_u * (1.0 - re_u));
    if (radicand < 0.0) return std::nullopt;
    return half_b - std::sqrt(radicand);
}

double lipschitz_bound_intvar(const Vector& spec, double re_w) {
    if (re_w > 0.0) throw DomainError("lipschitz_bound_intvar: Re(w) must be <= 0");
    double l = 0.0;
    for (int i = 0; i < spec.size(); ++i)
        l += std::atan(spec[i] / (1.0 - 2.0 * re_w * spec[i]));
    return 2.0 * l;
}

namespace {

double local_arg_slope(const KernelMatrices& mats, const EmpiricalScan& scan, double x,
                       double h0) {
    auto arg_at = [&](double t) {
        return eval_det_raw(mats, scan_point(scan.axis, scan.fixed_real, scan.other, t))
            .diag.det_arg;
    };
    double h = h0;
    for (int iter = 0; iter < 24; ++iter) {
        double x2 = std::min(x + h, scan.upper);
        if (x2 <= x) return 0.0;
        double d = std::remainder(arg_at(x2) - arg_at(x), 2.0 * kPi);
        if (std::abs(d) < 0.5 * kPi || h < 1e-12 * scan.upper)
            return std::abs(d) / (x2 - x);
        h *= 0.25;
    }
    return 0.0;
}

} // namespace

double lipschitz_estimate_empirical(const KernelMatrices& mats, const EmpiricalScan& scan,
                                    int probe_count, double safety, std::uint64_t seed) {
    if (probe_count < 16) throw ConfigError("lipschitz_estimate_empirical: need >= 16 probes");
    if (!(safety >= 1.0)) throw ConfigError("lipschitz_estimate_empirical: safety must be >= 1");
    if (!(scan.upper > 0.0)) throw ConfigError("lipschitz_estimate_empirical: upper must be > 0");

    double stratum = scan.upper / probe_count;
    std::vector<double> slopes(probe_count);
    std::vector<double> positions(probe_count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < probe_count; ++i)
        positions[i] = (i + 0.9 * unif(rng)) * stratum;

    parallel_for(probe_count, [&](std::size_t i) {
        slopes[i] = local_arg_slope(mats, scan, positions[i], 0.1 * stratum);
    });

    int best = static_cast<int>(std::max_element(slopes.begin(), slopes.end()) - slopes.begin());
    double l_max = slopes[best];

    // Refine around the maximum with a denser local sweep.
    double lo = std::max(0.0, positions[best] - stratum);
    double hi = std::min(scan.upper, positions[best] + stratum);
    int refine = 8;
    std::vector<double> refined(refine);
    parallel_for(refine, [&](std::size_t j) {
        double x = lo + (hi - lo) * (j + 0.5) / refine;
        refined[j] = local_arg_slope(mats, scan, x, 0.02 * stratum);
    });
    for (double s : refined) l_max = std::max(l_max, s);

    return safety * l_max;
}

} // namespace vss
