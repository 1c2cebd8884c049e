#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>

#include "commands.hpp"
#include "mono/coupling.hpp"
#include "mono/graph_dynamics.hpp"
#include "mono/graph_spectral.hpp"
#include "mono/halfline.hpp"
#include "mono/herglotz.hpp"
#include "mono/monitoring.hpp"
#include "mono/quadrature.hpp"
#include "mono/stable_laws.hpp"

namespace mono::cli {

namespace {

struct Check {
    bool ok = false;
    std::string detail;
};

// value <= bound, with the bound scaled to zero when the fault hook is on.
struct Gate {
    bool fault = false;
    Check operator()(double value, double bound, const std::string& what) const {
        const double b = fault ? 0.0 : bound;
        return {value <= b, fmt::format("{} = {:.3g} (bound {:.3g})", what, value, b)};
    }
};

GraphSpec random_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GraphSpec s;
    const int c = static_cast<int>(u(rng) * 3.0);
    s.graph_case = c == 0 ? GraphCase::I : c == 1 ? GraphCase::II : GraphCase::III;
    s.mu = -1.0 + 2.0 * u(rng);
    s.nu = s.mu + 0.2 + 2.0 * u(rng);
    s.k = s.graph_case == GraphCase::II ? 0.0 : 0.05 + 0.9 * u(rng);
    s.theta = Extended(std::exp(I * (2.0 * pi * u(rng))));
    return s;
}

ScenarioSpec ring_scenario(double ell, const GridParams& g, const std::function<Complex(double)>& f) {
    ScenarioSpec sc;
    sc.kind = ScenarioKind::RingUnitary;
    sc.state = ring_graph(ell, 1.0, g).sample([&](const std::string&, double x) { return f(x); });
    sc.state.normalize();
    return sc;
}

}  // namespace

int run_selftest(const SelftestOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Gate gate{false};
    Gate faulty{opt.inject_fault};

    std::vector<std::pair<std::string, std::function<Check()>>> props;

    props.emplace_back("Cayley and Mobius relations between s, M and S", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const GraphSpec s = random_spec(rng);
            const Complex z(-5.0 + 10.0 * u(rng), 0.05 + 3.0 * u(rng));
            const Complex kappa = char_closed(s, I);
            const Complex sv = livsic_closed(s, z), m = weyl_closed(s, z), S = char_closed(s, z);
            worst = std::max({worst, std::abs(livsic_from_weyl(Extended(m)) - sv),
                              std::abs(char_from_livsic(sv, {kappa}) - S), std::abs(char_from_weyl(m, {kappa}) - S)});
        }
        return faulty(worst, 1e-10, "max deviation");
    });

    props.emplace_back("Case III characteristic function factors into Case I and Case II", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            GraphSpec s = random_spec(rng);
            s.graph_case = GraphCase::III;
            if (s.k == 0.0) s.k = 0.5;
            const auto [a, b] = case_iii_factors(s);
            const Complex z(-5.0 + 10.0 * u(rng), 3.0 * u(rng));
            worst = std::max(worst, std::abs(char_closed(s, z) - char_closed(a, z) * char_closed(b, z)));
        }
        return gate(worst, 1e-14, "max deviation");
    });

    props.emplace_back("transmission modulus times |S| is constant", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double k = 0.05 + 0.9 * u(rng), ell = 0.2 + 2.0 * u(rng);
            const Complex th = std::exp(I * 2.0 * pi * u(rng));
            const double a = std::exp(-ell);
            const double c = std::abs((th + a * k) / (k * a * th + 1.0));
            for (int j = 0; j < 100; ++j) {
                const double l = -20.0 + 40.0 * u(rng);
                worst = std::max(worst, std::abs(std::abs(transmission(k, ell, th, l) *
                                                          char_interval(k, ell, th, Complex(l, 0.0))) - c));
            }
        }
        return gate(worst, 1e-10, "max deviation");
    });

    props.emplace_back("lattice Herglotz integral gives tan(i)", [&] {
        HerglotzMeasure mu;
        mu.variant = AtomicLattice{pi / 2.0, pi, 1.0};
        const Complex v = herglotz_eval(mu, {0.0, 1.0});
        return gate(std::abs(v - std::tan(I)), 1e-8, "|value - tan(i)|");
    });

    props.emplace_back("theta-kappa map round trip", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            GraphSpec s = random_spec(rng);
            const Extended th(std::exp(I * 2.0 * pi * u(rng)));
            const Extended kap = theta_kappa_map(s, MapDirection::ThetaToKappa, th);
            const Extended back = theta_kappa_map(s, MapDirection::KappaToTheta, kap);
            worst = std::max(worst, std::abs(back.value - th.value));
        }
        return gate(worst, 1e-12, "max round-trip error");
    });

    props.emplace_back("dilation compresses to the dissipative semigroup", [&] {
        GridParams g{1.0 / 512.0, 1.0, 4.0};
        GraphSpec s;
        s.graph_case = GraphCase::III;
        s.mu = 0.0;
        s.nu = 1.0;
        s.k = 0.3 + 0.6 * u(rng);
        const Graph c3 = contraction_graph(s, g);
        const GraphState y = c3.sample([&](const std::string& e, double x) {
            return Complex(std::cos(3.0 * x + (e == "appendix")), std::sin(x * x)) *
                   (std::abs(x) < 2.0 ? 1.0 : 0.0);
        });
        const Graph full = full_graph(s.k, s.mu, g);
        const double t = 1.5;
        const GraphState direct = evolve_contraction(y, s, t);
        const GraphState via = compress_to_case_iii(evolve_unitary_full(embed_case_iii(y, full), s.k, s.mu, t), y);
        return gate(max_abs_difference(direct, via), 1e-13, "max sample difference");
    });

    props.emplace_back("contraction is norm non-increasing, full graph is unitary", [&] {
        GridParams g{1.0 / 256.0, 1.0, 4.0};
        GraphSpec s;
        s.graph_case = GraphCase::III;
        s.k = 0.6;
        const Graph c3 = contraction_graph(s, g);
        const GraphState y = c3.sample([](const std::string&, double x) { return Complex(std::abs(x) < 1.5 ? 1.0 : 0.0); });
        double prev = y.norm2(), worst_increase = 0.0;
        for (int j = 1; j <= 8; ++j) {
            const double n = evolve_contraction(y, s, 0.25 * j).norm2();
            worst_increase = std::max(worst_increase, n - prev);
            prev = n;
        }
        const Graph full = full_graph(0.6, 0.0, g);
        const GraphState x = embed_case_iii(y, full);
        const double drift = std::abs(evolve_unitary_full(x, 0.6, 0.0, 1.0).norm2() - x.norm2());
        return gate(std::max(worst_increase, drift), 1e-12, "norm increase or drift");
    });

    props.emplace_back("predicted tau is 2 pi periodic in the flux", [&] {
        GridParams g{1.0 / 1024.0, 1.0, 4.0};
        ScenarioSpec sc = ring_scenario(1.0, g, [](double x) { return Complex(1.0 + x, 0.3 * x); });
        double worst = 0.0;
        for (int i = 0; i < 12; ++i) {
            sc.flux = 2.0 * pi * u(rng);
            const double a = predicted_tau(sc);
            sc.flux += 2.0 * pi;
            worst = std::max(worst, std::abs(predicted_tau(sc) - a) / std::max(a, 1e-12));
        }
        return gate(worst, 1e-12, "relative change");
    });

    props.emplace_back("ring decay rate matches the boundary formula", [&] {
        GridParams g{std::ldexp(1.0, -16), 1.0, 4.0};
        ScenarioSpec sc = ring_scenario(1.0, g, [](double x) { return Complex(std::sqrt(3.0) * x); });
        const double tau = estimate_decay_rate(sc, 1.0).tau_extrapolated;
        return gate(std::abs(tau - 3.0) / 3.0, 0.02, "relative error against 3");
    });

    props.emplace_back("decay rate is invariant under global phase", [&] {
        GridParams g{std::ldexp(1.0, -14), 1.0, 4.0};
        ScenarioSpec sc;
        sc.kind = ScenarioKind::RingDissipative;
        sc.kappa = Complex(0.3, 0.2);
        sc.state = ring_graph(1.0, 1.0, g).sample([](const std::string&, double x) { return Complex(1.0 + x, x * x); });
        sc.state.normalize();
        const double a = estimate_decay_rate(sc, 1.0).tau_extrapolated;
        for (auto& e : sc.state.edges) e.f *= std::exp(I * 0.77);
        const double b = estimate_decay_rate(sc, 1.0).tau_extrapolated;
        return gate(std::abs(a - b) / a, 1e-10, "relative change");
    });

    props.emplace_back("indicator on the line has a(t) = 1 - |t|", [&] {
        GridParams g{1e-3, 1.0, 2.0};
        ScenarioSpec sc;
        sc.kind = ScenarioKind::Line;
        sc.state = line_graph(g).sample([](const std::string&, double x) { return Complex(x > 0.0 && x < 1.0 ? 1.0 : 0.0); });
        double worst = 0.0;
        for (double t : {0.1, 0.25, 0.5, 0.9}) worst = std::max(worst, std::abs(survival_amplitude(sc, t) - (1.0 - t)));
        return gate(worst, 1e-10, "max deviation");
    });

    props.emplace_back("Zeno classification follows the vertex condition", [&] {
        GridParams g{1.0 / 1024.0, 1.0, 4.0};
        int wrong = 0;
        for (int i = 0; i < 10; ++i) {
            const double a = 2.0 * pi * u(rng);
            ScenarioSpec sc = ring_scenario(1.0, g, [&](double x) { return std::exp(I * a * x) * (1.5 + std::cos(2.0 * pi * x)); });
            sc.flux = a;
            wrong += classify_state(sc).kind != ZenoKind::Zeno;
            sc.flux = a + 0.5;
            wrong += classify_state(sc).kind != ZenoKind::Resonant;
        }
        return gate(wrong, 0.0, "misclassifications");
    });

    props.emplace_back("sine transform Plancherel identity", [&] {
        const auto phi = HalfLineState::from_function([](double x) { return Complex(std::sqrt(2.0) * std::exp(-x)); },
                                                      1e-3, 40.0, false);
        const auto d = spectral_distribution(phi, BoundaryCondition::dirichlet());
        return gate(std::abs(d.continuous_mass() - 1.0), 1e-6, "|mass - 1|");
    });

    props.emplace_back("Volterra limit of the n-fold coupling", [&] {
        HerglotzMeasure mu;
        mu.variant = DiscreteAtoms{{0.0}, {1.0}};
        const CharFn s = CharFn::rank_one(mu, 1.0);
        const double err = std::abs(volterra_limit(s, 10000, I) - std::exp(-2.0));
        return gate(err, 2e-5, "|S(ni)^n - e^-2|");
    });

    props.emplace_back("stable-law constants and Levy density", [&] {
        const double d = std::abs(d_alpha(0.5) - std::sqrt(pi / 2.0));
        const StableLawParams p = params_from_tails(0.3, 0.1, 0.5), q = params_from_tails(0.9, 0.3, 0.5);
        const double homog = std::abs(q.sigma - 3.0 * p.sigma) + std::abs(q.beta - p.beta);
        bool ok = true;
        const double mass = quad::adaptive_real([](double l) { return levy_half(1.3, l).pdf; }, 0.0, 5.0, {}, &ok);
        const double cdf = std::abs(mass - levy_half(1.3, 5.0).cdf);
        return gate(std::max({d, homog, cdf}), 1e-10, "max deviation");
    });

    props.emplace_back("Cayley round trip and Mobius involution", [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Complex s = std::polar(0.999 * std::sqrt(u(rng)), 2.0 * pi * u(rng));
            const Complex kappa = std::polar(0.999 * std::sqrt(u(rng)), 2.0 * pi * u(rng));
            worst = std::max({worst, std::abs(livsic_from_weyl(Extended(weyl_from_livsic(s))) - s),
                              std::abs(char_from_livsic(char_from_livsic(s, {kappa}), {kappa}) - s)});
        }
        return gate(worst, 1e-12, "max deviation");
    });

    props.emplace_back("Herglotz property and normalization of graph measures", [&] {
        double min_im = 1e300, norm_dev = 0.0;
        for (int i = 0; i < 40; ++i) {
            GraphSpec s = random_spec(rng);
            if (i % 4 == 0) s.graph_case = GraphCase::I;
            const HerglotzMeasure mu = spectral_measure(s);
            norm_dev = std::max(norm_dev, std::abs(mu.normalization() - 1.0));
            for (int j = 0; j < 25; ++j) {
                const HalfPlanePoint z{-10.0 + 20.0 * u(rng), 0.01 + 3.0 * u(rng)};
                min_im = std::min(min_im, herglotz_eval(mu, z).imag());
            }
        }
        Check c = gate(norm_dev, 1e-6, "max |normalization - 1|");
        if (!(min_im > 0.0)) c = {false, fmt::format("min Im = {:.3g}", min_im)};
        return c;
    });

    props.emplace_back("rank-one function is contractive and reflects with its measure", [&] {
        HerglotzMeasure mu;
        mu.variant = DiscreteAtoms{{0.7}, {1.0}};
        const CharFn s = CharFn::rank_one(mu, 0.8), r = reflect(s), m = CharFn::rank_one(mu.reflected(), 0.8);
        double worst = 0.0, maxmod = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Complex z(-10.0 + 20.0 * u(rng), 0.001 + 3.0 * u(rng));
            maxmod = std::max(maxmod, std::abs(s(z)));
            worst = std::max(worst, std::abs(r(z) - m(z)));
        }
        Check c = gate(worst, 1e-12, "reflection mismatch");
        if (maxmod > 1.0 + 1e-14) c = {false, fmt::format("max |S| = {:.17g}", maxmod)};
        return c;
    });

    props.emplace_back("closed forms are contractive and Herglotz", [&] {
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const GraphSpec s = random_spec(rng);
            const Complex z(-10.0 + 20.0 * u(rng), 0.001 + 3.0 * u(rng));
            bad += !(std::abs(livsic_closed(s, z)) < 1.0) || !(weyl_closed(s, z).imag() > 0.0) ||
                   !(std::abs(char_closed(s, z)) <= 1.0);
        }
        return gate(bad, 0.0, "violations");
    });

    props.emplace_back("changing theta rotates S by a constant phase", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            GraphSpec a = random_spec(rng), b = a;
            b.theta = Extended(std::exp(I * 2.0 * pi * u(rng)));
            const Complex r0 = char_closed(a, I) / char_closed(b, I);
            const Complex z(-5.0 + 10.0 * u(rng), 0.1 + u(rng));
            worst = std::max({worst, std::abs(char_closed(a, z) / char_closed(b, z) - r0), std::abs(std::abs(r0) - 1.0)});
        }
        return gate(worst, 1e-12, "max deviation");
    });

    props.emplace_back("spectral measure integral reproduces the Weyl function", [&] {
        double worst = 0.0;
        for (GraphCase gc : {GraphCase::I, GraphCase::II, GraphCase::III}) {
            GraphSpec s = random_spec(rng);
            s.graph_case = gc;
            s.k = gc == GraphCase::II ? 0.0 : 0.5;
            const HerglotzMeasure mu = spectral_measure(s);
            for (int j = 0; j < 10; ++j) {
                const Complex z(-5.0 + 10.0 * u(rng), 0.2 + 2.0 * u(rng));
                worst = std::max(worst, std::abs(herglotz_eval(mu, {z.real(), z.imag()}) - weyl_closed(s, z)));
            }
        }
        return gate(worst, 1e-6, "max deviation");
    });

    props.emplace_back("Case III Livsic function splits off a bounded outer factor", [&] {
        double maxmod = 0.0, minmod = 1e300;
        for (int i = 0; i < 200; ++i) {
            GraphSpec s3 = random_spec(rng);
            s3.graph_case = GraphCase::III;
            if (s3.k == 0.0) s3.k = 0.5;
            GraphSpec s2 = s3;
            s2.graph_case = GraphCase::II;
            s2.k = 0.0;
            const Complex z(-10.0 + 20.0 * u(rng), 0.001 + 3.0 * u(rng));
            const double m = std::abs(livsic_closed(s3, z) / livsic_closed(s2, z));
            maxmod = std::max(maxmod, m);
            minmod = std::min(minmod, m);
        }
        Check c = gate(maxmod, 1.0, "max |outer factor|");
        if (!(minmod > 0.0)) c = {false, "outer factor vanishes"};
        return c;
    });

    props.emplace_back("group and semigroup laws are sample-exact", [&] {
        GridParams g{1.0 / 256.0, 1.0, 6.0};
        GraphSpec s;
        s.graph_case = GraphCase::III;
        s.k = 0.4;
        const Graph c3 = contraction_graph(s, g);
        const GraphState y = c3.sample([](const std::string& e, double x) {
            return Complex(e == "appendix" ? 0.5 : 1.0, x) * (std::abs(x) < 1.0 ? 1.0 : 0.0);
        });
        const double d1 = max_abs_difference(evolve_contraction(evolve_contraction(y, s, 0.75), s, 1.25),
                                              evolve_contraction(y, s, 2.0));
        const GraphState r = ring_graph(1.0, std::exp(-0.3 * I), g).sample([](const std::string&, double x) { return Complex(x, 1.0); });
        const double d2 = max_abs_difference(evolve_ring(evolve_ring(r, 0.3, -0.5), 0.3, 2.25), evolve_ring(r, 0.3, 1.75));
        const double drift = std::abs(evolve_ring(r, 0.3, 3.5).norm2() - r.norm2()) / r.norm2();
        return gate(std::max({d1, d2, drift}), 1e-13, "max deviation");
    });

    props.emplace_back("Case II semigroup is nilpotent", [&] {
        GridParams g{1.0 / 512.0, 1.0, 4.0};
        GraphSpec s;
        s.graph_case = GraphCase::II;
        s.nu = 1.5;
        const Graph net = contraction_graph(s, g);
        const GraphState y = net.sample([](const std::string&, double x) { return Complex(1.0 + x, -x); });
        double worst = 0.0;
        for (double t : {1.5, 2.0, 3.0}) worst = std::max(worst, std::sqrt(evolve_contraction(y, s, t).norm2()));
        return gate(worst, 0.0, "norm after l");
    });

    props.emplace_back("evolved Case III states obey the gate rule", [&] {
        GridParams g{1.0 / 2048.0, 1.0, 4.0};
        GraphSpec s;
        s.graph_case = GraphCase::III;
        s.k = 0.35;
        const double kp = std::sqrt(1.0 - s.k * s.k);
        const GraphState y = contraction_graph(s, g).sample([](const std::string& e, double x) {
            return e == "left" ? Complex(std::cos(x), std::sin(2.0 * x)) * (x > -3.0 ? 1.0 : 0.0) : Complex{};
        });
        const GraphState v = evolve_contraction(y, s, 0.5);
        const Complex in = head_value(v.edge("left"));
        const double err = std::max(std::abs(tail_value(v.edge("right")) - s.k * in),
                                    std::abs(tail_value(v.edge("appendix")) - kp * in));
        return gate(err, 2.0 * g.dx * 2.0, "boundary mismatch");
    });

    props.emplace_back("dissipative decay depends only on boundary moduli", [&] {
        GridParams g{std::ldexp(1.0, -14), 1.0, 4.0};
        ScenarioSpec sc;
        sc.kind = ScenarioKind::RingDissipative;
        auto mod = [](double x) { return 1.0 + x * x; };
        sc.state = ring_graph(1.0, 1.0, g).sample([&](const std::string&, double x) { return Complex(mod(x)); });
        sc.state.normalize();
        const Complex p0 = tail_value(sc.state.edges[0]), pl = head_value(sc.state.edges[0]);
        sc.kappa = p0 / pl;
        const double a = estimate_decay_rate(sc, 1.0).tau_extrapolated;
        const double expect = std::norm(pl) - std::norm(p0);
        for (long j = 0; j < sc.state.edges[0].f.size(); ++j) {
            const double x = (static_cast<double>(j) + 0.5) * g.dx;
            sc.state.edges[0].f[j] *= std::exp(I * (2.0 * x + std::sin(3.0 * x)));
        }
        sc.kappa = tail_value(sc.state.edges[0]) / head_value(sc.state.edges[0]);
        const double b = estimate_decay_rate(sc, 1.0).tau_extrapolated;
        return gate(std::max(std::abs(a - expect), std::abs(b - expect)) / expect, 0.02, "relative error");
    });

    props.emplace_back("flux profile of the ring decay rate", [&] {
        GridParams g{std::ldexp(1.0, -16), 1.0, 4.0};
        ScenarioSpec sc = ring_scenario(1.0, g, [](double x) { return std::exp(I * 1.1 * x); });
        double worst = 0.0;
        for (double phi : {0.5, 2.0, 3.5, 2.0 + 2.0 * pi}) {
            sc.flux = phi;
            const double expect = 4.0 * std::pow(std::sin(0.5 * (phi - 1.1)), 2) * std::norm(head_value(sc.state.edges[0]));
            worst = std::max(worst, std::abs(estimate_decay_rate(sc, 1.0).tau_extrapolated - expect) / expect);
        }
        return gate(worst, 0.02, "relative error");
    });

    props.emplace_back("monitored survival is non-increasing in t", [&] {
        GridParams g{std::ldexp(1.0, -14), 1.0, 4.0};
        ScenarioSpec sc = ring_scenario(1.0, g, [](double x) { return Complex(1.0 + x); });
        double prev = 1.0, worst = 0.0;
        for (int i = 1; i <= 8; ++i) {
            const double p = monitored_survival(sc, 0.25 * i, 1024);
            worst = std::max(worst, p - prev);
            prev = p;
        }
        return gate(worst, 1e-3, "largest increase");
    });

    props.emplace_back("half-line tails agree with the boundary sigma", [&] {
        const auto phi = HalfLineState::from_function([](double x) { return Complex(std::sqrt(2.0) * std::exp(-x)); },
                                                      1e-3, 40.0, false);
        double worst = 0.0;
        for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::mixed(2.0)}) {
            const auto d = spectral_distribution(phi, bc);
            const StableSigma ss = stable_sigma(bc, phi);
            const TailConstants tc = tail_constants(d, ss.alpha);
            worst = std::max(worst, std::abs((tc.c1 + tc.c2) * d_alpha(ss.alpha) - ss.sigma) / ss.sigma);
        }
        return gate(worst, 0.05, "relative mismatch");
    });

    props.emplace_back("distribution functions are monotone with unit mass", [&] {
        const auto phi = HalfLineState::from_function([](double x) { return Complex(std::exp(-x * x)); }, 1e-3, 12.0, true);
        double worst = 0.0, drop = 0.0;
        for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::mixed(-0.5), BoundaryCondition::mixed(1.5)}) {
            const auto d = spectral_distribution(phi, bc);
            worst = std::max(worst, std::abs(d.bound_weight + d.continuous_mass() - 1.0));
            double prev = d.N(-10.0);
            for (double l : {-3.0, -1.0, 0.5, 2.0, 10.0, 50.0}) {
                const double n = d.N(l);
                drop = std::max(drop, prev - n);
                prev = n;
            }
        }
        return gate(std::max(worst, drop), 1e-6, "max deviation");
    });

    props.emplace_back("coupling multiplies moduli and log potentials", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            GraphSpec s3 = random_spec(rng);
            s3.graph_case = GraphCase::III;
            if (s3.k == 0.0) s3.k = 0.5;
            const auto [a, b] = case_iii_factors(s3);
            const CharFn f1 = CharFn::product_form(a.k, 0.0, 1.0), f2 = CharFn::singular_inner(b.ell());
            const CharFn c = couple(f1, f2);
            const Complex z(-5.0 + 10.0 * u(rng), 0.01 + 2.0 * u(rng));
            worst = std::max({worst, std::abs(std::abs(c(z)) - std::abs(f1(z)) * std::abs(f2(z))),
                              std::abs(std::abs(c(I)) - std::abs(f1(I)) * std::abs(f2(I))),
                              std::abs(log_potential(s3, z) - log_potential(a, z) - log_potential(b, z))});
        }
        return gate(worst, 1e-12, "max deviation");
    });

    props.emplace_back("rescaling composes and reflection is an involution", [&] {
        const CharFn s = CharFn::product_form(0.6, 1.3, std::exp(0.4 * I));
        const CharFn twice = rescale(rescale(s, 2.0, 0.5), 0.7, -1.0);
        const CharFn once = rescale(s, 1.4, -1.0 + 0.7 * 0.5);
        std::vector<Complex> grid;
        for (int i = 0; i < 100; ++i) grid.emplace_back(-5.0 + 10.0 * u(rng), 0.01 + 3.0 * u(rng));
        const double d1 = projective_distance(twice, once, grid);
        const double d2 = projective_distance(reflect(reflect(s)), s, grid);
        return gate(std::max(d1, d2), 1e-12, "projective distance");
    });

    props.emplace_back("stable characteristic function identities", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            StableLawParams p;
            p.alpha = 0.1 + 1.9 * u(rng);
            p.beta = -1.0 + 2.0 * u(rng);
            p.gamma = -1.0 + 2.0 * u(rng);
            p.sigma = 0.1 + 2.0 * u(rng);
            const double t = -5.0 + 10.0 * u(rng);
            const Complex f = stable_cf(p, t);
            worst = std::max({worst, std::abs(std::abs(f) - std::exp(-p.sigma * std::pow(std::abs(t), p.alpha))),
                              std::abs(stable_cf(p, -t) - std::conj(f))});
            StableLawParams q = p;
            q.beta = 0.0;
            q.gamma = 0.0;
            const double b1 = 0.2 + u(rng), b2 = 0.2 + u(rng);
            const double b = std::pow(std::pow(b1, q.alpha) + std::pow(b2, q.alpha), 1.0 / q.alpha);
            worst = std::max(worst, std::abs(stable_cf(q, b1 * t) * stable_cf(q, b2 * t) - stable_cf(q, b * t)));
        }
        return gate(worst, 1e-12, "max deviation");
    });

    int failures = 0;
    for (auto& [name, fn] : props) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c = {false, fmt::format("exception: {}", e.what())};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << fmt::format("{} {:<62} {:8.3f}s  {}\n", c.ok ? "PASS" : "FAIL", name, dt, c.detail);
        failures += !c.ok;
    }
    std::cout << fmt::format("{} of {} properties passed\n", props.size() - failures, props.size());
    return failures == 0 ? 0 : 3;
}

}  // namespace mono::cli
