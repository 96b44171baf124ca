#include "vss/cli.hpp"
#include "vss/crossing.hpp"
#include "vss/montecarlo.hpp"
#include "vss/parallel.hpp"
#include "vss/pricing.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace vss {

using nlohmann::json;

const char* kTransformScanHeader = "abscissa,re_xi,im_xi,k,log_abs_det,arg_det,error";
const char* kCrossingScanHeader = "abscissa,re_det,im_det,arg_det,k";
const char* kPriceHeader =
    "strike,maturity,method,n,degree,put,call,ms_matrices,ms_transform,ms_quadrature,error";
const char* kMcHeader = "payoff,strike,price,stderr,ci_low,ci_high,fourier_price,contained";
const char* kDetCheckHeader = "re_u,im_u,re_w,im_w,n,rel_err,pass";

// --------------------------------------------------------------------------
// Config (de)serialization
// --------------------------------------------------------------------------

namespace {

json model_to_json(const ModelParams& m) {
    return json{{"kappa", m.kappa}, {"nu", m.nu},       {"theta", m.theta},
                {"rho", m.rho},     {"x0", m.x0},       {"hurst", m.hurst},
                {"s0", m.s0},       {"maturity", m.maturity}};
}

void model_from_json(const json& j, ModelParams& m) {
    m.kappa = j.value("kappa", 0.0);
    m.nu = j.value("nu", 0.2);
    m.theta = j.value("theta", 0.0);
    m.rho = j.value("rho", 0.0);
    m.x0 = j.value("x0", 0.1);
    m.hurst = j.value("hurst", 0.5);
    m.s0 = j.value("s0", 1.0);
    m.maturity = j.value("maturity", 1.0);
}

} // namespace

void to_json(json& j, const RunConfig& c) {
    j = json{
        {"model", model_to_json(c.model)},
        {"n", c.n},
        {"seed", c.seed},
        {"output", {{"path", c.output_path}, {"format", c.output_format}}},
        {"scan",
         {{"axis", c.scan.axis},
          {"fixed_real", c.scan.fixed_real},
          {"other_re", c.scan.other_re},
          {"other_im", c.scan.other_im},
          {"upper", c.scan.upper},
          {"step", c.scan.step},
          {"method", c.scan.method},
          {"n_coarse", c.scan.n_coarse}}},
        {"price",
         {{"strikes", c.price.strikes},
          {"maturities", c.price.maturities},
          {"method", c.price.method},
          {"degree", c.price.degree},
          {"n_coarse", c.price.n_coarse}}},
        {"mc",
         {{"paths", c.mc.paths},
          {"steps", c.mc.steps},
          {"antithetic", c.mc.antithetic},
          {"payoff", c.mc.payoff},
          {"strikes", c.mc.strikes},
          {"fourier_prices", c.mc.fourier_prices}}},
        {"check",
         {{"points", c.check.points},
          {"n_list", c.check.n_list},
          {"threshold", c.check.threshold}}},
    };
    if (c.scan.l_theta) j["scan"]["l_theta"] = *c.scan.l_theta;
    if (c.price.l_theta) j["price"]["l_theta"] = *c.price.l_theta;
}

void from_json(const json& j, RunConfig& c) {
    if (j.contains("model")) model_from_json(j.at("model"), c.model);
    c.n = j.value("n", 200);
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("output")) {
        c.output_path = j.at("output").value("path", std::string("out.csv"));
        c.output_format = j.at("output").value("format", std::string("csv"));
    }
    if (j.contains("scan")) {
        const json& s = j.at("scan");
        c.scan.axis = s.value("axis", std::string("u"));
        c.scan.fixed_real = s.value("fixed_real", 0.5);
        c.scan.other_re = s.value("other_re", 0.0);
        c.scan.other_im = s.value("other_im", 0.0);
        c.scan.upper = s.value("upper", 10.0);
        c.scan.step = s.value("step", 0.05);
        c.scan.method = s.value("method", std::string("hybrid"));
        c.scan.n_coarse = s.value("n_coarse", 40);
        if (s.contains("l_theta")) c.scan.l_theta = s.at("l_theta").get<double>();
    }
    if (j.contains("price")) {
        const json& p = j.at("price");
        c.price.strikes = p.value("strikes", std::vector<double>{1.0});
        c.price.maturities = p.value("maturities", std::vector<double>{});
        c.price.method = p.value("method", std::string("hybrid"));
        c.price.degree = p.value("degree", 30);
        c.price.n_coarse = p.value("n_coarse", 40);
        if (p.contains("l_theta")) c.price.l_theta = p.at("l_theta").get<double>();
    }
    if (j.contains("mc")) {
        const json& m = j.at("mc");
        c.mc.paths = m.value("paths", 100000L);
        c.mc.steps = m.value("steps", 500);
        c.mc.antithetic = m.value("antithetic", true);
        c.mc.payoff = m.value("payoff", std::string("call"));
        c.mc.strikes = m.value("strikes", std::vector<double>{1.0});
        c.mc.fourier_prices = m.value("fourier_prices", std::vector<double>{});
    }
    if (j.contains("check")) {
        const json& k = j.at("check");
        c.check.points = k.value("points", 20);
        c.check.n_list = k.value("n_list", std::vector<int>{20, 100});
        c.check.threshold = k.value("threshold", 1e-8);
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig c;
    try {
        from_json(j, c);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    return c;
}

// --------------------------------------------------------------------------
// Output helpers
// --------------------------------------------------------------------------

namespace {

// Writes through a temp file plus rename so readers never see partial output.
void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("cannot write output file: " + path);
        out << content;
    }
    fs::rename(tmp, target);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ScanAxis parse_axis(const std::string& axis) {
    if (axis == "u") return ScanAxis::u;
    if (axis == "w") return ScanAxis::w;
    throw ConfigError("scan axis must be 'u' or 'w'");
}

ArgPoint axis_point(ScanAxis axis, double fixed_real, Complex other, double x) {
    Complex var(fixed_real, x);
    return axis == ScanAxis::u ? ArgPoint{var, other} : ArgPoint{other, var};
}

std::vector<double> scan_abscissae(double upper, double step) {
    std::vector<double> xs;
    if (upper <= 0.0) return xs;
    long cells = static_cast<long>(std::floor(upper / step + 1e-12));
    for (long i = 0; i <= cells; ++i) xs.push_back(i * step);
    if (xs.back() < upper - 1e-12 * upper) xs.push_back(upper);
    return xs;
}

} // namespace

// --------------------------------------------------------------------------
// Commands
// --------------------------------------------------------------------------

int cmd_transform_scan(const RunConfig& config) {
    config.model.validate();
    Method method = method_from_name(config.scan.method);
    ScanAxis axis = parse_axis(config.scan.axis);
    Complex other(config.scan.other_re, config.scan.other_im);
    if (!(config.scan.step > 0.0)) throw ConfigError("scan.step must be > 0");

    TimeGrid grid(config.n, config.model.maturity);
    KernelMatrices mats = KernelMatrices::fractional(config.model, grid);

    std::optional<KernelMatrices> coarse;
    if (method == Method::hybrid)
        coarse.emplace(KernelMatrices::fractional(
            config.model, TimeGrid(config.scan.n_coarse, config.model.maturity)));

    std::vector<double> xs = scan_abscissae(config.scan.upper, config.scan.step);

    std::optional<LipschitzEvaluator> lip;
    if (method == Method::lipschitz && !xs.empty()) {
        double l = config.scan.l_theta.value_or(0.0);
        if (l <= 0.0) {
            EmpiricalScan es{axis, config.scan.fixed_real, other, config.scan.upper};
            l = std::max(lipschitz_estimate_empirical(mats, es), 1e-8);
        }
        lip.emplace(mats, LipschitzScan{axis, config.scan.fixed_real, other,
                                        config.scan.upper * (1.0 + 1e-12), l});
    }

    struct Row {
        double x = 0.0;
        TransformValue tv;
        std::string error;
    };
    std::vector<Row> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        rows[i].x = xs[i];
        try {
            ArgPoint pt = axis_point(axis, config.scan.fixed_real, other, xs[i]);
            switch (method) {
                case Method::trace: rows[i].tv = eval_trace(mats, pt); break;
                case Method::det_raw: rows[i].tv = eval_det_raw(mats, pt); break;
                case Method::hybrid: rows[i].tv = eval_hybrid(mats, *coarse, pt); break;
                case Method::lipschitz: rows[i].tv = lip->eval(xs[i]); break;
                case Method::prefactor_free:
                    rows[i].tv = eval_prefactor_free(mats, pt);
                    break;
            }
        } catch (const Error& e) {
            rows[i].error = e.what();
        }
    });

    std::ostringstream csv;
    csv << kTransformScanHeader << "\n";
    bool any_error = false;
    for (const Row& r : rows) {
        if (!r.error.empty()) {
            any_error = true;
            csv << fmt(r.x) << ",nan,nan,,nan,nan," << r.error << "\n";
            continue;
        }
        csv << fmt(r.x) << ',' << fmt(r.tv.value.real()) << ',' << fmt(r.tv.value.imag())
            << ',';
        if (r.tv.k) csv << *r.tv.k;
        csv << ',' << fmt(r.tv.diag.det_log_abs) << ',' << fmt(r.tv.diag.det_arg) << ",\n";
    }
    atomic_write(config.output_path, csv.str());
    return any_error ? kExitNumerical : kExitOk;
}

int cmd_crossing_scan(const RunConfig& config) {
    config.model.validate();
    ScanAxis axis = parse_axis(config.scan.axis);
    Complex other(config.scan.other_re, config.scan.other_im);

    TimeGrid grid(config.n, config.model.maturity);
    KernelMatrices mats = KernelMatrices::fractional(config.model, grid);

    CrossingScanSpec spec;
    spec.axis = axis;
    spec.fixed_real = config.scan.fixed_real;
    spec.other = other;
    spec.upper = config.scan.upper;
    spec.step = config.scan.step;
    spec.l_theta = config.scan.l_theta;
    CrossingReport rep = scan_crossings(mats, spec);

    json summary;
    summary["axis"] = config.scan.axis;
    summary["fixed_real"] = rep.fixed_real;
    summary["first_crossing"] =
        rep.first_crossing ? json(*rep.first_crossing) : json(nullptr);
    summary["crossings"] = json::array();
    for (const Crossing& c : rep.crossings)
        summary["crossings"].push_back(
            {{"lo", c.lo}, {"hi", c.hi}, {"direction", c.direction}});
    summary["spectrum"] = std::vector<double>(rep.spectrum.data(),
                                              rep.spectrum.data() + rep.spectrum.size());
    summary["bounds"] = json::array();
    for (auto& [r, b] : rep.bounds) summary["bounds"].push_back({{"r", r}, {"bound", b}});

    if (config.output_format == "json") {
        json out = summary;
        out["grid"] = rep.grid;
        out["arg_det"] = rep.arg_det;
        out["k_profile"] = rep.k_profile;
        atomic_write(config.output_path, out.dump(2) + "\n");
        return kExitOk;
    }

    std::ostringstream csv;
    csv << kCrossingScanHeader << "\n";
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        double mod = std::exp(rep.log_abs_det[i]);
        csv << fmt(rep.grid[i]) << ',' << fmt(mod * std::cos(rep.arg_det[i])) << ','
            << fmt(mod * std::sin(rep.arg_det[i])) << ',' << fmt(rep.arg_det[i]) << ','
            << rep.k_profile[i] << "\n";
    }
    atomic_write(config.output_path, csv.str());
    atomic_write(config.output_path + ".report.json", summary.dump(2) + "\n");
    return kExitOk;
}

int cmd_price(const RunConfig& config) {
    config.model.validate();
    PriceRequest req;
    req.method = method_from_name(config.price.method);
    req.quad_degree = config.price.degree;
    req.n = config.n;
    req.n_coarse = config.price.n_coarse;
    req.l_theta = config.price.l_theta;

    std::vector<double> maturities = config.price.maturities;
    if (maturities.empty()) maturities.push_back(config.model.maturity);

    PriceTable table = price_surface(config.model, config.price.strikes, maturities, req);

    std::ostringstream csv;
    csv << kPriceHeader << "\n";
    bool any_error = false;
    for (const PriceCell& cell : table.cells) {
        csv << fmt(cell.strike) << ',' << fmt(cell.maturity) << ',' << config.price.method
            << ',' << config.n << ',' << config.price.degree << ',';
        if (cell.error.empty()) {
            csv << fmt(cell.result.put) << ',' << fmt(cell.result.call) << ','
                << fmt(cell.result.timings.ms_matrices) << ','
                << fmt(cell.result.timings.ms_transform) << ','
                << fmt(cell.result.timings.ms_quadrature) << ",\n";
        } else {
            any_error = true;
            csv << "nan,nan,nan,nan,nan," << cell.error << "\n";
        }
    }
    atomic_write(config.output_path, csv.str());
    return any_error ? kExitNumerical : kExitOk;
}

int cmd_mc_benchmark(const RunConfig& config) {
    config.model.validate();
    McConfig mc;
    mc.paths = config.mc.paths;
    mc.steps = config.mc.steps;
    mc.seed = config.seed;
    mc.antithetic = config.mc.antithetic;
    Payoff payoff = config.mc.payoff == "put" ? Payoff::put : Payoff::call;
    if (config.mc.payoff != "put" && config.mc.payoff != "call")
        throw ConfigError("mc.payoff must be 'call' or 'put'");
    if (!config.mc.fourier_prices.empty() &&
        config.mc.fourier_prices.size() != config.mc.strikes.size())
        throw ConfigError("mc.fourier_prices must align with mc.strikes");

    std::ostringstream csv;
    csv << kMcHeader << "\n";
    for (std::size_t i = 0; i < config.mc.strikes.size(); ++i) {
        McResult res = mc_price(config.model, mc, config.mc.strikes[i], payoff);
        csv << config.mc.payoff << ',' << fmt(config.mc.strikes[i]) << ',' << fmt(res.price)
            << ',' << fmt(res.stderr_) << ',' << fmt(res.ci_low) << ',' << fmt(res.ci_high)
            << ',';
        if (!config.mc.fourier_prices.empty()) {
            double fp = config.mc.fourier_prices[i];
            bool inside = fp >= res.ci_low && fp <= res.ci_high;
            csv << fmt(fp) << ',' << (inside ? 1 : 0) << "\n";
        } else {
            csv << ",\n";
        }
    }
    atomic_write(config.output_path, csv.str());
    return kExitOk;
}

int cmd_det_identity_check(const RunConfig& config) {
    config.model.validate();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    struct Point {
        Complex u, w;
        int n;
    };
    std::vector<Point> points;
    for (int i = 0; i < config.check.points; ++i) {
        Complex u(unif(rng), -5.0 + 10.0 * unif(rng));
        Complex w(-2.0 * unif(rng), -10.0 + 20.0 * unif(rng));
        for (int n : config.check.n_list) points.push_back({u, w, n});
    }

    std::ostringstream csv;
    csv << kDetCheckHeader << "\n";
    double max_err = 0.0;
    for (const Point& pt : points) {
        TimeGrid grid(pt.n, config.model.maturity);
        KernelMatrices mats = KernelMatrices::fractional(config.model, grid);
        ArgPoint ap{pt.u, pt.w};
        Complex phi = phi_tilde_n(mats, ap, config.check.threshold / 10.0);
        TransformValue raw = eval_det_raw(mats, ap);
        // exp(-2 phi) / det - 1, evaluated in log space to dodge overflow.
        Complex log_det(raw.diag.det_log_abs, raw.diag.det_arg);
        double rel = std::abs(std::exp(-2.0 * phi - log_det) - 1.0);
        max_err = std::max(max_err, rel);
        bool pass = rel <= config.check.threshold;
        csv << fmt(pt.u.real()) << ',' << fmt(pt.u.imag()) << ',' << fmt(pt.w.real()) << ','
            << fmt(pt.w.imag()) << ',' << pt.n << ',' << fmt(rel) << ',' << (pass ? 1 : 0)
            << "\n";
    }
    atomic_write(config.output_path, csv.str());
    return max_err <= config.check.threshold ? kExitOk : kExitThreshold;
}

// --------------------------------------------------------------------------
// Entry point
// --------------------------------------------------------------------------

int run_cli(int argc, char** argv) {
    CLI::App app{"Fourier-Laplace transform and option pricing in the Volterra "
                 "Stein-Stein model"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<double> nu, rho, hurst, theta, x0, s0, maturity, step, upper;
    std::optional<int> n, degree;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output, method;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON config file")->required();
        sub->add_option("--nu", nu, "override model.nu");
        sub->add_option("--rho", rho, "override model.rho");
        sub->add_option("--hurst", hurst, "override model.hurst");
        sub->add_option("--theta", theta, "override model.theta");
        sub->add_option("--x0", x0, "override model.x0");
        sub->add_option("--s0", s0, "override model.s0");
        sub->add_option("--maturity", maturity, "override model.maturity");
        sub->add_option("--n", n, "override grid steps");
        sub->add_option("--seed", seed, "override seed");
        sub->add_option("--output", output, "override output path");
        sub->add_option("--method", method, "override method");
        sub->add_option("--step", step, "override scan step");
        sub->add_option("--upper", upper, "override scan upper bound");
        sub->add_option("--degree", degree, "override quadrature degree");
    };

    CLI::App* scan = app.add_subcommand("transform-scan", "tabulate the transform along a scan");
    CLI::App* crossing = app.add_subcommand("crossing-scan", "determinant crossing diagnostics");
    CLI::App* price = app.add_subcommand("price", "European option prices via the Lewis formula");
    CLI::App* mc = app.add_subcommand("mc-benchmark", "Monte Carlo benchmark prices");
    CLI::App* check = app.add_subcommand("det-identity-check",
                                         "verify exp(-2 phi_tilde_n) = det(Phi_n)");
    for (CLI::App* sub : {scan, crossing, price, mc, check}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        RunConfig config = load_config(config_path);
        if (nu) config.model.nu = *nu;
        if (rho) config.model.rho = *rho;
        if (hurst) config.model.hurst = *hurst;
        if (theta) config.model.theta = *theta;
        if (x0) config.model.x0 = *x0;
        if (s0) config.model.s0 = *s0;
        if (maturity) config.model.maturity = *maturity;
        if (n) config.n = *n;
        if (seed) config.seed = *seed;
        if (output) config.output_path = *output;
        if (method) {
            config.scan.method = *method;
            config.price.method = *method;
        }
        if (step) config.scan.step = *step;
        if (upper) config.scan.upper = *upper;
        if (degree) config.price.degree = *degree;

        if (scan->parsed()) return cmd_transform_scan(config);
        if (crossing->parsed()) return cmd_crossing_scan(config);
        if (price->parsed()) return cmd_price(config);
        if (mc->parsed()) return cmd_mc_benchmark(config);
        if (check->parsed()) return cmd_det_identity_check(config);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace vss
