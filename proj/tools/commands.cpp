#include "commands.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>

#include "mono/coupling.hpp"
#include "mono/halfline.hpp"
#include "mono/herglotz.hpp"
#include "mono/monitoring.hpp"
#include "mono/stable_laws.hpp"

namespace mono::cli {

using json = nlohmann::ordered_json;

namespace {

std::ofstream open_out(const RunOptions& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    const auto path = std::filesystem::path(opt.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput(fmt::format("cannot write '{}'", path.string()));
    return os;
}

void write_json(const RunOptions& opt, const std::string& name, const json& j) {
    auto os = open_out(opt, name);
    os << j.dump(2) << "\n";
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::vector<double> linspace(double a, double b, long n) {
    if (n < 2) throw InvalidInput("grid needs at least two points");
    std::vector<double> v(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

}  // namespace

int run_spectral(const Config& cfg, const RunOptions& opt) {
    const GraphSpec spec = graph_from(cfg);
    const auto lam = linspace(cfg.number("spectral.lambda_min", -20.0), cfg.number("spectral.lambda_max", 20.0),
                              cfg.integer("spectral.points", 401));
    const bool gate = spec.graph_case == GraphCase::III && !spec.theta.is_infinite();
    const double tol = tolerance(1e-10);
    auto os = open_out(opt, "spectral.csv");
    os << "# anchor: characteristic function S(lambda+i0) of the graph triple"
       << (gate ? " and transmission t(lambda) of the interval with a gate" : "") << "\n";
    os << "# case: " << to_string(spec.graph_case) << "\n";
    os << (gate ? "lambda,abs_S,arg_S,abs_t\n" : "lambda,abs_S,arg_S\n");
    double ts_dev = 0.0, ts_const = 0.0;
    if (gate) {
        const Complex th = spec.theta.value;
        const double a = std::exp(-spec.ell());
        ts_const = std::abs((th + a * spec.k) / (spec.k * a * th + 1.0));
    }
    for (double l : lam) {
        const Complex s = char_closed(spec, Complex(l, 0.0));
        os << num(l) << "," << num(std::abs(s)) << "," << num(std::arg(s));
        if (gate) {
            const Complex t = transmission(spec.k, spec.ell(), spec.theta.value, l);
            const Complex si = char_interval(spec.k, spec.ell(), spec.theta.value, Complex(l, 0.0));
            ts_dev = std::max(ts_dev, std::abs(std::abs(t * si) - ts_const));
            os << "," << num(std::abs(t));
        }
        os << "\n";
    }
    json j;
    j["command"] = "spectral";
    j["case"] = to_string(spec.graph_case);
    j["kappa"] = cjson(char_closed(spec, I));
    j["livsic_at_i"] = cjson(livsic_closed(spec, I));
    j["weyl_at_i"] = cjson(weyl_closed(spec, I));
    int status = 0;
    if (gate) {
        j["transmission_modulus_predicted"] = ts_const;
        j["transmission_modulus_max_deviation"] = ts_dev;
        j["tolerance"] = tol;
        if (ts_dev > tol) status = 3;
    }
    j["status"] = status == 0 ? "ok" : "tolerance_exceeded";
    write_json(opt, "spectral.json", j);
    return status;
}

int run_measure(const Config& cfg, const RunOptions& opt) {
    GraphSpec spec = graph_from(cfg);
    HerglotzMeasure mu = spectral_measure(spec);
    mu.cutoff = cfg.number("measure.cutoff", mu.cutoff);
    const double y = cfg.number("measure.im", 1.0);
    if (!(y > 0.0)) throw InvalidInput("config field 'measure.im' must be positive");
    const auto xs = linspace(cfg.number("measure.re_min", -5.0), cfg.number("measure.re_max", 5.0),
                             cfg.integer("measure.points", 51));
    const double tol = tolerance(1e-6);
    auto os = open_out(opt, "measure.csv");
    os << "# anchor: Herglotz integral of the spectral measure against the closed-form Weyl function\n";
    os << "# case: " << to_string(spec.graph_case) << "\n";
    os << "re_z,im_z,re_integral,im_integral,re_closed,im_closed,abs_diff\n";
    double worst = 0.0;
    for (double x : xs) {
        const Complex h = herglotz_eval(mu, {x, y});
        const Complex w = weyl_closed(spec, Complex(x, y));
        const double d = std::abs(h - w);
        worst = std::max(worst, d);
        os << fmt::format("{},{},{},{},{},{},{}\n", num(x), num(y), num(h.real()), num(h.imag()), num(w.real()),
                          num(w.imag()), num(d));
    }
    json j;
    j["command"] = "measure";
    j["case"] = to_string(spec.graph_case);
    j["max_abs_diff"] = worst;
    j["tolerance"] = tol;
    j["status"] = worst <= tol ? "ok" : "tolerance_exceeded";
    write_json(opt, "measure.json", j);
    return worst <= tol ? 0 : 3;
}

int run_evolve(const Config& cfg, const RunOptions& opt) {
    const GridParams grid = grid_from(cfg);
    const std::string mode = cfg.text("evolve.mode");
    const double t = cfg.number("evolve.t");
    Graph net;
    if (mode == "contraction") {
        if (t < 0.0) throw InvalidInput("config field 'evolve.t' must be >= 0 for a semigroup");
        net = contraction_graph(graph_from(cfg), grid);
    } else if (mode == "generator") {
        net = generator_graph(graph_from(cfg), grid);
    } else if (mode == "full") {
        net = full_graph(cfg.number("evolve.k"), cfg.number("evolve.mu", 0.0), grid);
    } else if (mode == "ring") {
        net = ring_graph(cfg.number("evolve.ell", 1.0), std::exp(-I * cfg.number("evolve.flux", 0.0)), grid);
    } else if (mode == "dissipative_ring") {
        const Complex kappa = cfg.complex("evolve.kappa", 0.0);
        if (!(std::abs(kappa) < 1.0)) throw InvalidInput("config field 'evolve.kappa' must satisfy |kappa| < 1");
        if (t < 0.0) throw InvalidInput("config field 'evolve.t' must be >= 0 for a semigroup");
        net = ring_graph(cfg.number("evolve.ell", 1.0), kappa, grid);
    } else {
        throw InvalidInput(fmt::format("config field 'evolve.mode': unknown mode '{}'", mode));
    }
    const GraphState s0 = state_from(cfg, net);
    EvolveOptions eo;
    eo.allow_interpolation = cfg.flag("evolve.interpolate", false);
    const GraphState s1 = transport(net, s0, t, eo);
    auto os = open_out(opt, "evolve.csv");
    write_state_csv(os, s1, "exact transport along the edges with vertex scattering matrices");
    json j;
    j["command"] = "evolve";
    j["mode"] = mode;
    j["t"] = t;
    j["norm_initial"] = std::sqrt(s0.norm2());
    j["norm_final"] = std::sqrt(s1.norm2());
    j["interpolated"] = s1.interpolated;
    j["status"] = "ok";
    write_json(opt, "evolve.json", j);
    return 0;
}

int run_monitor(const Config& cfg, const RunOptions& opt) {
    const ScenarioSpec sc = scenario_from(cfg);
    const double t = cfg.number("monitor.t", 1.0);
    const long n_min = cfg.integer("monitor.n_min", 64), n_max = cfg.integer("monitor.n_max", 4096);
    if (n_min < 1 || n_max < 8 * n_min) throw InvalidInput("config fields 'monitor.n_min'/'monitor.n_max' give fewer than four ladder points");
    std::vector<long> ladder;
    for (long n = n_min; n <= n_max; n *= 2) ladder.push_back(n);
    const double tol = tolerance(0.02);
    const MonitoringResult r = estimate_decay_rate(sc, t, ladder);
    auto os = open_out(opt, "monitor.csv");
    write_monitoring_csv(os, r, "monitored decay rate -(2n/t) log|a(t/n)| against the boundary-mismatch formula");
    json j;
    j["command"] = "monitor";
    j["scenario"] = to_string(sc.kind);
    double tau = 0.0;
    try {
        tau = predicted_tau(sc);
        j["tau_predicted"] = tau;
    } catch (const InvalidInput& e) {
        tau = vertex_mismatch_tau(sc);
        j["tau_predicted"] = nullptr;
        j["tau_predicted_note"] = e.what();
    }
    j["tau_vertex"] = vertex_mismatch_tau(sc);
    j["tau_extrapolated"] = r.divergent ? json(nullptr) : json(r.tau_extrapolated);
    j["residual"] = r.residual;
    j["divergent"] = r.divergent;
    bool ok = !r.divergent;
    if (ok && tau > 1e-8) {
        const double rel = std::abs(r.tau_extrapolated - tau) / tau;
        j["relative_error"] = rel;
        ok = rel <= tol;
    } else if (ok) {
        j["absolute_error"] = std::abs(r.tau_extrapolated);
        ok = std::abs(r.tau_extrapolated) < 1e-3;
    }
    j["tolerance"] = tol;
    j["status"] = ok ? "ok" : "tolerance_exceeded";
    write_json(opt, "monitor.json", j);
    return ok ? 0 : 3;
}

namespace {

HalfLineState halfline_state(const Config& cfg) {
    const std::string kind = cfg.text("halfline.state", "exp");
    const double a = cfg.number("halfline.rate", 1.0);
    if (!(a > 0.0)) throw InvalidInput("config field 'halfline.rate' must be positive");
    const double h = cfg.number("halfline.h", 1e-3), x_max = cfg.number("halfline.x_max", 40.0);
    std::function<Complex(double)> f;
    if (kind == "exp")
        f = [a](double x) { return Complex(std::exp(-a * x)); };
    else if (kind == "x_exp")
        f = [a](double x) { return Complex(x * std::exp(-a * x)); };
    else if (kind == "gauss")
        f = [a](double x) { return Complex(std::exp(-a * x * x)); };
    else
        throw InvalidInput(fmt::format("config field 'halfline.state': unknown state '{}'", kind));
    return HalfLineState::from_function(f, h, x_max, true);
}

int zeno_halfline(const Config& cfg, const RunOptions& opt) {
    const std::string bc_tag = cfg.text("halfline.bc", "dirichlet");
    BoundaryCondition bc;
    if (bc_tag == "dirichlet")
        bc = BoundaryCondition::dirichlet();
    else if (bc_tag == "mixed")
        bc = BoundaryCondition::mixed(cfg.number("halfline.gamma"));
    else
        throw InvalidInput(fmt::format("config field 'halfline.bc': unknown boundary condition '{}'", bc_tag));
    const HalfLineState phi = halfline_state(cfg);
    const SpectralDistribution dist = spectral_distribution(phi, bc);
    const StableSigma ss = stable_sigma(bc, phi);
    const double alpha = cfg.number("halfline.alpha", ss.alpha);
    const TailConstants tc = tail_constants(dist, alpha);
    const Classification cl = classify_by_tails(dist);
    const double tol = tolerance(0.05);

    auto os = open_out(opt, "zeno.csv");
    os << "# anchor: spectral distribution N(lambda) of the state and its scaled upper tail\n";
    os << fmt::format("# alpha: {}\n", num(alpha));
    os << "lambda,N,scaled_upper_tail\n";
    for (int e = 0; e <= 16; ++e) {
        const double l = std::pow(10.0, 0.25 * e);
        os << fmt::format("{},{},{}\n", num(l), num(dist.N(l)), num(std::pow(l, alpha) * dist.upper_tail(l)));
    }
    json j;
    j["command"] = "zeno";
    j["mode"] = "halfline";
    j["classification"] = to_string(cl.kind);
    j["diagnostics"] = cl.diagnostics;
    j["bound_state_weight"] = dist.bound_weight;
    j["c1"] = tc.c1;
    j["c2"] = tc.c2;
    j["ladder_residual"] = tc.residual;
    j["inconclusive"] = tc.inconclusive;
    j["alpha"] = alpha;
    j["sigma_boundary"] = ss.sigma;
    j["degenerate"] = ss.degenerate;
    bool ok = true;
    if (!ss.degenerate && !tc.inconclusive && alpha == ss.alpha) {
        const double from_tails = (tc.c1 + tc.c2) * d_alpha(alpha);
        const double rel = std::abs(from_tails - ss.sigma) / ss.sigma;
        j["sigma_from_tails"] = from_tails;
        j["relative_error"] = rel;
        ok = rel <= tol;
    }
    j["tolerance"] = tol;
    j["status"] = ok ? "ok" : "tolerance_exceeded";
    write_json(opt, "zeno.json", j);
    return ok ? 0 : 3;
}

TimeScale scale_from(const std::string& s) {
    if (s == "linear") return TimeScale::Linear;
    if (s == "sqrt") return TimeScale::Sqrt;
    if (s == "square") return TimeScale::Square;
    if (s == "two_thirds") return TimeScale::TwoThirds;
    throw InvalidInput(fmt::format("config field 'zeno.timescale': unknown scale '{}'", s));
}

}  // namespace

int run_zeno(const Config& cfg, const RunOptions& opt) {
    if (cfg.has_section("halfline")) return zeno_halfline(cfg, opt);
    const ScenarioSpec sc = scenario_from(cfg);
    const Classification cl = classify_state(sc);
    const auto scale = time_scale(scale_from(cfg.text("zeno.timescale", "linear")));
    const double t = cfg.number("zeno.t", 1.0);
    const auto ns = cfg.numbers("zeno.n_values", {100.0, 1000.0, 10000.0});
    auto os = open_out(opt, "zeno.csv");
    os << "# anchor: monitored survival [p(scale(t/n))]^n\n";
    os << fmt::format("# t: {}\n", num(t));
    os << "n,survival\n";
    json surv = json::array();
    for (double nd : ns) {
        const long n = std::lround(nd);
        if (n < 1) throw InvalidInput("config field 'zeno.n_values' must hold positive integers");
        const double p = timescale_survival(sc, scale, t, n);
        os << fmt::format("{},{}\n", n, num(p));
        surv.push_back(json::array({n, p}));
    }
    json j;
    j["command"] = "zeno";
    j["mode"] = "scenario";
    j["scenario"] = to_string(sc.kind);
    j["classification"] = to_string(cl.kind);
    j["tau"] = cl.tau;
    j["diagnostics"] = cl.diagnostics;
    j["survival"] = surv;
    j["status"] = "ok";
    write_json(opt, "zeno.json", j);
    return 0;
}

int run_couple(const Config& cfg, const RunOptions& opt) {
    const auto pos = cfg.numbers("couple.positions", {0.0});
    const auto w = cfg.numbers("couple.weights", std::vector<double>(pos.size(), 1.0 / static_cast<double>(pos.size())));
    if (pos.size() != w.size()) throw InvalidInput("config fields 'couple.positions' and 'couple.weights' differ in length");
    double mass = 0.0;
    for (double x : w) {
        if (!(x > 0.0)) throw InvalidInput("config field 'couple.weights' must be positive");
        mass += x;
    }
    const double t = cfg.number("couple.t", 1.0);
    const Complex z = cfg.complex("couple.z", I);
    if (!(z.imag() > 0.0)) throw InvalidInput("config field 'couple.z_im' must be positive");
    HerglotzMeasure mu;
    mu.variant = DiscreteAtoms{pos, w};
    const CharFn s = CharFn::rank_one(mu, t);
    const double ell = 2.0 * t * mass;
    const Complex limit = CharFn::volterra(ell)(z);
    const auto ns = cfg.numbers("couple.n_values", {1250.0, 2500.0, 5000.0, 10000.0});
    const double tol = tolerance(1e-3);
    auto os = open_out(opt, "couple.csv");
    os << "# anchor: n-fold self-coupling S(nz)^n of a rank-one triple against the Volterra limit exp(-i l / z)\n";
    os << fmt::format("# l: {}\n", num(ell));
    os << "n,re_Sn,im_Sn,abs_error\n";
    json rows = json::array();
    double prev = 0.0, ratio = 0.0;
    long n_last = 1;
    for (double nd : ns) {
        const long n = std::lround(nd);
        const Complex v = volterra_limit(s, n, z);
        const double err = std::abs(v - limit);
        os << fmt::format("{},{},{},{}\n", n, num(v.real()), num(v.imag()), num(err));
        if (prev > 0.0) ratio = err / prev;
        prev = err;
        n_last = n;
        rows.push_back(json::array({n, err}));
    }
    const Complex wl = coupling_weyl_limit(s, n_last, z);
    const Complex wv = volterra_weyl(ell, z);
    const double wdiff = std::abs(wl - wv);
    json j;
    j["command"] = "couple";
    j["l"] = ell;
    j["limit"] = cjson(limit);
    j["errors"] = rows;
    j["last_error_ratio"] = ratio;
    j["weyl_limit"] = cjson(wl);
    j["weyl_predicted"] = cjson(wv);
    j["weyl_abs_diff"] = wdiff;
    j["tolerance"] = tol;
    j["status"] = wdiff <= tol ? "ok" : "tolerance_exceeded";
    write_json(opt, "couple.json", j);
    return wdiff <= tol ? 0 : 3;
}

int run_stable(const Config& cfg, const RunOptions& opt) {
    StableLawParams p;
    p.alpha = cfg.number("stable.alpha");
    p.beta = cfg.number("stable.beta", 0.0);
    p.gamma = cfg.number("stable.gamma", 0.0);
    p.sigma = cfg.number("stable.sigma", 1.0);
    try {
        p.validate();
    } catch (const InvalidInput& e) {
        throw InvalidInput(fmt::format("config section 'stable': {}", e.what()));
    }
    const long n = cfg.integer("stable.samples", 10000);
    if (n < 1) throw InvalidInput("config field 'stable.samples' must be positive");
    const auto ts = cfg.numbers("stable.t_values", {0.25, 0.5, 1.0, 2.0});
    std::mt19937_64 rng(opt.seed);
    std::vector<double> xs(static_cast<size_t>(n));
    for (auto& x : xs) x = sample_stable(p, rng);
    {
        auto os = open_out(opt, "stable.csv");
        os << "# anchor: Chambers-Mallows-Stuck draws from the stable law\n";
        os << fmt::format("# seed: {}\n", opt.seed);
        os << "index,value\n";
        for (size_t i = 0; i < xs.size(); ++i) os << i << "," << num(xs[i]) << "\n";
    }
    const double tol = tolerance(5.0 / std::sqrt(static_cast<double>(n)));
    double worst = 0.0;
    auto os = open_out(opt, "stable_cf.csv");
    os << "# anchor: characteristic function exp(sigma(i t gamma - |t|^alpha (1 - i beta sgn t omega)))\n";
    os << "t,re_cf,im_cf,re_empirical,im_empirical\n";
    for (double t : ts) {
        Complex e{};
        for (double x : xs) e += std::exp(I * t * x);
        e /= static_cast<double>(n);
        const Complex f = stable_cf(p, t);
        worst = std::max(worst, std::abs(e - f));
        os << fmt::format("{},{},{},{},{}\n", num(t), num(f.real()), num(f.imag()), num(e.real()), num(e.imag()));
    }
    json j;
    j["command"] = "stable";
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["gamma"] = p.gamma;
    j["sigma"] = p.sigma;
    j["d_alpha"] = std::isinf(d_alpha(p.alpha)) ? json("inf") : json(d_alpha(p.alpha));
    j["seed"] = opt.seed;
    j["max_cf_deviation"] = worst;
    j["tolerance"] = tol;
    j["status"] = worst <= tol ? "ok" : "tolerance_exceeded";
    write_json(opt, "stable.json", j);
    return worst <= tol ? 0 : 3;
}

}  // namespace mono::cli
