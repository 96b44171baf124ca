#include "vss/transform.hpp"
#include "vss/parallel.hpp"
#include "vss/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace vss {

namespace {

std::atomic<std::uint64_t> g_eval_count{0};

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

struct DetPathResult {
    LogPolarDet det;
    Complex quad_term;
};

// Shared determinant-path core: factors Phi_n once and reuses the LU for
// both the determinant and the inner-product term (T/n) g^T Psi_n g.
DetPathResult det_path(const KernelMatrices& mats, Complex a, Complex b) {
    int n = mats.n();
    CMatrix sigma_tilde = build_sigma_tilde(mats, b, 0);
    CMatrix phi = build_Phi_n(sigma_tilde, a, mats.grid());
    Eigen::PartialPivLU<CMatrix> lu(phi);

    DetPathResult out;
    double log_abs = 0.0, ang = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex pivot = lu.matrixLU()(k, k);
        if (pivot == Complex(0.0, 0.0))
            throw DomainError("transform: det(Phi_n) vanished (degenerate point)");
        log_abs += std::log(std::abs(pivot));
        ang = wrap_angle(ang + std::arg(pivot));
    }
    if (lu.permutationP().determinant() < 0) ang = wrap_angle(ang + std::numbers::pi);
    out.det.log_abs = log_abs;
    out.det.arg = ang;

    if (a == Complex(0.0, 0.0)) {
        out.quad_term = Complex(0.0, 0.0);
        return out;
    }
    CVector v;
    if (b == Complex(0.0, 0.0)) {
        v = mats.g().cast<Complex>();
    } else {
        CMatrix f = (-b) * mats.K().cast<Complex>();
        v = f.triangularView<Eigen::UnitLower>().solve(mats.g().cast<Complex>());
    }
    CVector y = lu.solve(v);
    out.quad_term = mats.dt() * a * v.cwiseProduct(y).sum();
    return out;
}

TransformValue make_det_raw(const KernelMatrices& mats, const ArgPoint& point) {
    auto [a, b] = build_ab(point, mats.params());
    DetPathResult core = det_path(mats, a, b);
    TransformValue out;
    out.method = Method::det_raw;
    out.n_used = mats.n();
    out.diag.det_log_abs = core.det.log_abs;
    out.diag.det_arg = core.det.arg;
    out.diag.quad_term = core.quad_term;
    Complex exponent = core.quad_term -
                       Complex(0.5 * core.det.log_abs, 0.5 * core.det.arg);
    out.value = std::exp(exponent);
    return out;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::trace: return "trace";
        case Method::det_raw: return "det_raw";
        case Method::hybrid: return "hybrid";
        case Method::lipschitz: return "lipschitz";
        case Method::prefactor_free: return "prefactor_free";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "trace") return Method::trace;
    if (name == "det_raw") return Method::det_raw;
    if (name == "hybrid") return Method::hybrid;
    if (name == "lipschitz") return Method::lipschitz;
    if (name == "prefactor_free") return Method::prefactor_free;
    throw ConfigError("unknown transform method: " + name);
}

std::uint64_t transform_eval_count() { return g_eval_count.load(); }
void reset_transform_eval_count() { g_eval_count.store(0); }

TransformValue eval_det_raw(const KernelMatrices& mats, const ArgPoint& point) {
    g_eval_count.fetch_add(1, std::memory_order_relaxed);
    return make_det_raw(mats, point);
}

TransformValue eval_trace(const KernelMatrices& mats, const ArgPoint& point) {
    g_eval_count.fetch_add(1, std::memory_order_relaxed);
    auto [a, b] = build_ab(point, mats.params());
    int n = mats.n();
    double dt = mats.dt();

    TransformValue out;
    out.method = Method::trace;
    out.n_used = n;
    if (a == Complex(0.0, 0.0)) {
        out.value = Complex(1.0, 0.0);
        out.diag.det_log_abs = 0.0;
        out.diag.det_arg = 0.0;
        return out;
    }

    // Full resolvent (I - b K)^{-1}; its trailing principal blocks are the
    // resolvents of the trailing blocks of I - b K.
    CMatrix f = (-b) * mats.K().cast<Complex>();
    CMatrix r = f.triangularView<Eigen::UnitLower>().solve(CMatrix::Identity(n, n));

    Complex trace_sum(0.0, 0.0);
    Complex quad(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        // Sigma_{n,i} and SigmaDot_{n,i} vanish outside the trailing corner
        // starting at row/column i, so the whole term reduces to that block.
        int m = n - i;
        CMatrix rc = r.block(i, i, m, m);
        CMatrix sig_c = rc * mats.sigma(i).block(i, i, m, m).cast<Complex>() * rc.transpose();
        CMatrix dot_c = rc * mats.sigma_dot(i).block(i, i, m, m).cast<Complex>() * rc.transpose();
        CMatrix mmat = (-2.0 * a * dt) * sig_c;
        mmat += CMatrix::Identity(m, m);
        Eigen::PartialPivLU<CMatrix> lu(mmat);
        for (Eigen::Index kk = 0; kk < m; ++kk) {
            if (lu.matrixLU()(kk, kk) == Complex(0.0, 0.0))
                throw DomainError("eval_trace: singular operator (degenerate point)");
        }
        trace_sum += lu.solve(dot_c).trace();
        if (i == 0) {
            CVector v = r * mats.g().cast<Complex>();
            CVector y = lu.solve(v);
            quad = dt * a * v.cwiseProduct(y).sum();
        }
    }
    Complex phi_n = -dt * a * trace_sum;
    out.value = std::exp(phi_n + quad);
    out.diag.quad_term = quad;
    // exp(-2 phi_n) approximates det(Phi_n); expose what the trace path knows.
    out.diag.det_log_abs = -2.0 * phi_n.real();
    out.diag.det_arg = wrap_angle(-2.0 * phi_n.imag());
    return out;
}

TransformValue eval_hybrid(const KernelMatrices& fine, const KernelMatrices& coarse,
                           const ArgPoint& point, double coarse_floor) {
    if (coarse.n() < 2 || coarse.n() > fine.n())
        throw ConfigError("eval_hybrid: need 2 <= n_coarse <= n");
    TransformValue sign_part = eval_det_raw(fine, point);
    TransformValue proxy = eval_trace(coarse, point);

    double re_prod = sign_part.value.real() * proxy.value.real();
    double im_prod = sign_part.value.imag() * proxy.value.imag();
    bool flip = re_prod < 0.0 && im_prod < 0.0;

    TransformValue out = sign_part;
    out.method = Method::hybrid;
    out.k = flip ? 1 : 0;
    if (flip) out.value = -out.value;
    // One disagreeing component with a near-zero proxy means the sign test
    // is uninformative; surface that instead of guessing.
    bool one_neg = (re_prod < 0.0) != (im_prod < 0.0);
    if (one_neg && std::abs(proxy.value) < coarse_floor) out.diag.hybrid_sign_warning = true;
    return out;
}

TransformValue eval_prefactor_free(const KernelMatrices& mats, const ArgPoint& point) {
    g_eval_count.fetch_add(1, std::memory_order_relaxed);
    auto [a, b] = build_ab(point, mats.params());
    int n = mats.n();

    CMatrix phi_tilde = build_Phi_tilde_n(mats, a, b);
    Matrix re = phi_tilde.real();
    Matrix im = phi_tilde.imag();

    SymEigen re_eig = sym_eigen(re);
    double scale = std::max(re_eig.values.cwiseAbs().maxCoeff(), 1e-300);
    double lo = re_eig.values.minCoeff();
    if (lo <= 1e-12 * scale)
        throw DefinitenessError("eval_prefactor_free: Re(PhiTilde_n) is not positive definite",
                                lo);
    double log_det_re = re_eig.values.array().log().sum();
    Vector inv_sqrt = re_eig.values.cwiseSqrt().cwiseInverse();
    Matrix re_mhalf = re_eig.vectors * inv_sqrt.asDiagonal() * re_eig.vectors.transpose();

    Matrix c = re_mhalf * im * re_mhalf;
    SymEigen ce = sym_eigen(0.5 * (c + c.transpose()));

    double log_abs_sqrt_det = 0.5 * log_det_re;
    double arg_sum = 0.0;
    for (int kk = 0; kk < n; ++kk) {
        double lam = ce.values[kk];
        log_abs_sqrt_det += 0.25 * std::log1p(lam * lam);
        arg_sum += 0.5 * std::atan(lam);
    }

    DetPathResult core = det_path(mats, a, b);

    TransformValue out;
    out.method = Method::prefactor_free;
    out.n_used = n;
    out.diag.det_log_abs = 2.0 * log_abs_sqrt_det;
    out.diag.det_arg = wrap_angle(2.0 * arg_sum);
    out.diag.quad_term = core.quad_term;
    Complex exponent = core.quad_term - Complex(log_abs_sqrt_det, arg_sum);
    out.value = std::exp(exponent);
    return out;
}

Complex phi_tilde_n(const KernelMatrices& mats, const ArgPoint& point, double s_quad_tol) {
    auto [a, b] = build_ab(point, mats.params());
    if (a == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    int n = mats.n();
    double dt = mats.dt();
    CMatrix sigma_tilde = build_sigma_tilde(mats, b, 0);
    Complex c2 = 2.0 * a * dt;

    auto integrand = [&](double s) -> Complex {
        CMatrix m = (-s * c2) * sigma_tilde;
        m += CMatrix::Identity(n, n);
        Eigen::PartialPivLU<CMatrix> lu(m);
        return a * dt * lu.solve(sigma_tilde).trace();
    };
    return integrate_simpson(integrand, 0.0, 1.0, s_quad_tol, 30);
}

int rotation_count(const LogPolarDet& det_value, Complex phi) {
    if (det_value.is_zero())
        throw DomainError("rotation_count: zero determinant");
    double modulus_gap = std::abs(det_value.log_abs + 2.0 * phi.real());
    if (modulus_gap > 1e-6 * (1.0 + std::abs(det_value.log_abs)))
        throw InconsistencyError(
            "rotation_count: |det| inconsistent with exp(-2 Re(phi))");
    double k_real = (0.5 * det_value.arg + phi.imag()) / std::numbers::pi;
    double k_round = std::round(k_real);
    if (std::abs(k_real - k_round) > 1e-6)
        throw InconsistencyError(
            "rotation_count: arg(det)/2 + Im(phi) is not an integer multiple of pi "
            "(det and phi computed at different discretizations?)");
    return static_cast<int>(k_round);
}

ArgPoint LipschitzEvaluator::point_at(double x) const {
    Complex var(scan_.fixed_real, x);
    if (scan_.axis == ScanAxis::u) return ArgPoint{var, scan_.other};
    return ArgPoint{scan_.other, var};
}

LipschitzEvaluator::LipschitzEvaluator(const KernelMatrices& mats, const LipschitzScan& scan)
    : mats_(mats), scan_(scan) {
    if (!(scan_.l_theta > 0.0) || !std::isfinite(scan_.l_theta))
        throw ConfigError("LipschitzEvaluator: l_theta must be finite and > 0");
    if (!(scan_.upper > 0.0)) throw ConfigError("LipschitzEvaluator: upper bound must be > 0");

    double step = std::numbers::pi / scan_.l_theta;
    long n_cells =
        static_cast<long>(std::ceil(scan_.upper * scan_.l_theta / std::numbers::pi));
    if (n_cells < 1) n_cells = 1;
    if (n_cells > 2000000) throw ConfigError("LipschitzEvaluator: grid too fine (check l_theta)");

    grid_.resize(n_cells + 1);
    for (long i = 0; i < n_cells; ++i) grid_[i] = i * step;
    grid_[n_cells] = scan_.upper;

    arg_.resize(grid_.size());
    parallel_for(grid_.size(), [&](std::size_t i) {
        TransformValue tv = eval_det_raw(mats_, point_at(grid_[i]));
        arg_[i] = tv.diag.det_arg;
    });

    k_.assign(grid_.size(), 0);
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
        double jump = arg_[i + 1] - arg_[i];
        if (jump > std::numbers::pi)
            k_[i + 1] = k_[i] - 1;
        else if (jump < -std::numbers::pi)
            k_[i + 1] = k_[i] + 1;
        else
            k_[i + 1] = k_[i];
    }
}

TransformValue LipschitzEvaluator::eval(double node) const {
    if (!(node >= 0.0) || node > scan_.upper)
        throw ConfigError("LipschitzEvaluator: node outside [0, upper]");
    std::size_t i =
        static_cast<std::size_t>(std::floor(node * scan_.l_theta / std::numbers::pi));
    if (i >= grid_.size()) i = grid_.size() - 1;
    TransformValue raw = eval_det_raw(mats_, point_at(node));
    double jump = raw.diag.det_arg - arg_[i];
    int k = k_[i];
    if (jump > std::numbers::pi)
        k -= 1;
    else if (jump < -std::numbers::pi)
        k += 1;

    TransformValue out = raw;
    out.method = Method::lipschitz;
    out.k = k;
    if (k % 2 != 0) out.value = -out.value; // e^{i pi k} = ±1
    return out;
}

TransformValue eval_lipschitz(const KernelMatrices& mats, const LipschitzScan& scan,
                              double node) {
    LipschitzEvaluator ev(mats, scan);
    return ev.eval(node);
}

} // namespace vss
