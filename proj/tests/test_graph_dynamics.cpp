#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mono/graph_dynamics.hpp"

using namespace mono;

namespace {

GraphSpec make(GraphCase c, double k, double ell) {
    GraphSpec s;
    s.graph_case = c;
    s.mu = 0.0;
    s.nu = ell;
    s.k = k;
    return s;
}

double box(double x, double a, double b) { return x > a && x < b ? 1.0 : 0.0; }

GraphState random_full_state(const Graph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    return g.sample([&](const std::string& e, double x) {
        const double w = e.rfind("upper", 0) == 0 ? a : c;
        return Complex(std::cos(3.0 * w * x + b), std::sin(d * x * x + w)) * box(x, -1.5, 1.5);
    });
}

}  // namespace

TEST_CASE("Case II semigroup is nilpotent with index l") {
    GridParams g{1.0 / 512.0, 1.0, 4.0};
    const GraphSpec s = make(GraphCase::II, 0.0, 1.0);
    const GraphState y = contraction_graph(s, g).sample([](const std::string&, double x) { return Complex(1.0 + x, x * x); });
    for (double t : {1.0, 1.5, 3.0}) CHECK(evolve_contraction(y, s, t).norm2() == 0.0);

    GraphState one = contraction_graph(s, g).sample([](const std::string&, double) { return Complex(1.0); });
    CHECK(std::abs(evolve_contraction(one, s, 0.5).norm2() - 0.5) <= g.dx);
}

TEST_CASE("Case I gate multiplies the crossing amplitude by k") {
    GridParams g{1.0 / 1024.0, 1.0, 4.0};
    const GraphSpec s = make(GraphCase::I, 0.5, 1.0);
    const GraphState y = contraction_graph(s, g).sample([](const std::string& e, double x) {
        return Complex(e == "left" ? box(x, -1.0, 0.0) : 0.0);
    });
    CHECK(std::abs(y.norm2() - 1.0) < 1e-12);
    CHECK(std::abs(evolve_contraction(y, s, 2.0).norm2() - 0.25) <= g.dx);
}

TEST_CASE("contraction never increases the norm and obeys the semigroup law") {
    GridParams g{1.0 / 256.0, 1.0, 6.0};
    const GraphSpec s = make(GraphCase::III, 0.4, 1.0);
    const GraphState y = contraction_graph(s, g).sample([](const std::string& e, double x) {
        return Complex(e == "appendix" ? 0.5 : 1.0, x) * box(x, -1.0, 1.0);
    });
    double prev = y.norm2();
    for (int j = 1; j <= 10; ++j) {
        const double n = evolve_contraction(y, s, 0.25 * j).norm2();
        CHECK(n <= prev + 1e-15);
        prev = n;
    }
    CHECK(max_abs_difference(evolve_contraction(evolve_contraction(y, s, 0.75), s, 1.25), evolve_contraction(y, s, 2.0)) == 0.0);
    CHECK_THROWS_AS(evolve_contraction(y, s, -1.0), InvalidInput);
}

TEST_CASE("full-graph group is unitary and V_{-t} is the adjoint of V_t") {
    GridParams g{1.0 / 256.0, 1.0, 6.0};
    const Graph full = full_graph(0.6, 0.0, g);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> steps(-512, 512);
    double drift = 0.0, adj = 0.0, group = 0.0;
    for (int i = 0; i < 20; ++i) {
        const GraphState a = random_full_state(full, rng), b = random_full_state(full, rng);
        const double t = steps(rng) * g.dx, u = steps(rng) * g.dx / 2.0;
        const double u2 = std::round(u / g.dx) * g.dx;
        drift = std::max(drift, std::abs(evolve_unitary_full(a, 0.6, 0.0, t).norm2() - a.norm2()) / a.norm2());
        adj = std::max(adj, std::abs(inner_product(evolve_unitary_full(a, 0.6, 0.0, t), b) -
                                     inner_product(a, evolve_unitary_full(b, 0.6, 0.0, -t))));
        group = std::max(group, max_abs_difference(evolve_unitary_full(evolve_unitary_full(a, 0.6, 0.0, t), 0.6, 0.0, u2),
                                                   evolve_unitary_full(a, 0.6, 0.0, t + u2)));
    }
    CHECK(drift < 1e-13);
    CHECK(adj < 1e-13);
    CHECK(group < 1e-13);
}

TEST_CASE("k = 1 decouples the two channels") {
    GridParams g{1.0 / 256.0, 1.0, 4.0};
    const Graph full = full_graph(1.0, 0.0, g);
    const GraphState a = full.sample([](const std::string& e, double x) {
        return Complex(e.rfind("upper", 0) == 0 ? 1.0 + x : 0.0, 0.0) * box(x, -1.0, 0.5);
    });
    const GraphState v = evolve_unitary_full(a, 1.0, 0.0, 1.0);
    CHECK(v.edge("lower_left").f.norm() == 0.0);
    CHECK(v.edge("lower_right").f.norm() == 0.0);
    // Upper channel is a plain shift by one unit.
    const GraphState shifted = full.sample([](const std::string& e, double x) {
        return Complex(e.rfind("upper", 0) == 0 ? x : 0.0, 0.0) * box(x, 0.0, 1.5);
    });
    CHECK(max_abs_difference(v, shifted) < 1e-12);
}

TEST_CASE("compression of the full graph gives the Case III semigroup") {
    GridParams g{1.0 / 512.0, 1.0, 6.0};
    const GraphSpec s = make(GraphCase::III, 0.45, 1.0);
    const GraphState y = contraction_graph(s, g).sample([](const std::string& e, double x) {
        return Complex(std::cos(3.0 * x + (e == "appendix")), std::sin(x * x)) * box(x, -2.0, 2.0);
    });
    const Graph full = full_graph(s.k, s.mu, g);
    for (double t : {0.25, 1.0, 1.5, 2.5}) {
        const GraphState via = compress_to_case_iii(evolve_unitary_full(embed_case_iii(y, full), s.k, s.mu, t), y);
        CHECK(max_abs_difference(evolve_contraction(y, s, t), via) < 1e-13);
    }
}

TEST_CASE("evolved Case III states obey the quantum Kirchhoff rule") {
    GridParams g{1.0 / 2048.0, 1.0, 4.0};
    const GraphSpec s = make(GraphCase::III, 0.35, 1.0);
    const GraphState y = contraction_graph(s, g).sample([](const std::string& e, double x) {
        return e == "left" ? Complex(std::cos(x), std::sin(2.0 * x)) * (x > -3.0 ? 1.0 : 0.0) : Complex{};
    });
    const GraphState v = evolve_contraction(y, s, 0.5);
    const double lhs = std::norm(head_value(v.edge("left")));
    const double rhs = std::norm(tail_value(v.edge("right"))) + std::norm(tail_value(v.edge("appendix")));
    const double fprime = 2.0;  // max |f'| of the sampled profile
    CHECK(std::abs(lhs - rhs) <= 2.0 * g.dx * fprime);
}

TEST_CASE("magnetic ring") {
    GridParams g{1.0 / 1024.0, 1.0, 4.0};
    const Graph ring = ring_graph(1.0, 1.0, g);
    const GraphState phi = ring.sample([](const std::string&, double x) { return Complex(1.0 + x, std::sin(5.0 * x)); });
    CHECK(max_abs_difference(evolve_ring(phi, 0.0, 1.0), phi) == 0.0);
    GraphState minus = phi;
    minus.edges[0].f *= -1.0;
    CHECK(max_abs_difference(evolve_ring(phi, pi, 1.0), minus) < 1e-15);
    for (double t : {0.3125, 1.75, -2.25})
        CHECK(std::abs(evolve_ring(phi, 0.7, t).norm2() - phi.norm2()) < 1e-13 * phi.norm2());
    GraphState unit = phi;
    unit.normalize();
    CHECK(std::abs(std::abs(inner_product(evolve_ring(unit, 0.7, 1.0), unit)) - 1.0) < 1e-13);
}

TEST_CASE("dissipative ring") {
    GridParams g{1.0 / 1024.0, 1.0, 4.0};
    const Graph ring = ring_graph(1.0, 1.0, g);
    const GraphState one = ring.sample([](const std::string&, double) { return Complex(1.0); });
    CHECK(evolve_dissipative_ring(one, 0.0, 1.0).norm2() == 0.0);
    CHECK(evolve_dissipative_ring(one, 0.0, 2.5).norm2() == 0.0);
    CHECK(std::abs(evolve_dissipative_ring(one, 0.5, 1.0).norm2() - 0.25 * one.norm2()) < 1e-14);
    CHECK_THROWS_AS(evolve_dissipative_ring(one, 1.0, 1.0), InvalidInput);

    // Compression of the dilation network.
    const Complex kappa(0.3, -0.4);
    const GraphState phi = ring.sample([](const std::string&, double x) { return Complex(std::cos(2.0 * x), x); });
    const Graph dil = dilation_graph(1.0, kappa, g);
    for (double t : {0.5, 1.0, 2.75}) {
        const GraphState via = compress_to_ring(transport(dil, embed_ring(phi, dil), t), phi);
        CHECK(max_abs_difference(via, evolve_dissipative_ring(phi, kappa, t)) < 1e-13);
    }
}

TEST_CASE("gauge transformations") {
    GridParams g{1.0 / 1024.0, 1.0, 4.0};
    const Graph ring = ring_graph(1.0, 1.0, g);
    const GraphState phi = ring.sample([](const std::string&, double x) { return Complex(1.0 + x * x, std::cos(3.0 * x)); });
    const long n = phi.edges[0].f.size();

    const std::vector<Eigen::VectorXd> zero{Eigen::VectorXd::Zero(n)};
    CHECK(max_abs_difference(apply_gauge(phi, zero), phi) == 0.0);

    const double t0 = 0.8;
    const std::vector<Eigen::VectorXd> cst{Eigen::VectorXd::Constant(n, t0)};
    GraphState expect = phi;
    for (long j = 0; j < n; ++j) expect.edges[0].f[j] *= std::exp(I * t0 * (j + 0.5) * g.dx);
    CHECK(max_abs_difference(apply_gauge(phi, cst), expect) < 1e-13);
    CHECK(std::abs(flux_of(cst[0], g.dx) - t0) < 1e-13);

    // G U_flux(t) = e^{i t0 t} U_{flux + t0}(t) G for the constant potential t0.
    for (double t : {0.25, 1.0, 1.625}) {
        const GraphState lhs = apply_gauge(evolve_ring(phi, 0.4, t), cst);
        GraphState rhs = evolve_ring(apply_gauge(phi, cst), 0.4 + t0, t);
        for (auto& e : rhs.edges) e.f *= std::exp(I * t0 * t);
        CHECK(max_abs_difference(lhs, rhs) < 1e-12);
    }

    // A non-constant potential moves the boundary phase by its flux.
    Eigen::VectorXd a(n);
    for (long j = 0; j < n; ++j) a[j] = 2.0 + std::sin(2.0 * pi * (j + 0.5) * g.dx) * 3.0;
    const double flux = flux_of(a, g.dx);
    const GraphState in_domain = ring.sample([](const std::string&, double x) {
        return std::exp(I * 0.6 * x) * (1.5 + std::cos(2.0 * pi * x));
    });
    const GraphState gauged = apply_gauge(in_domain, {a});
    const Complex w0 = tail_value(in_domain.edges[0]) / head_value(in_domain.edges[0]);
    const Complex w1 = tail_value(gauged.edges[0]) / head_value(gauged.edges[0]);
    CHECK(std::abs(w1 - w0 * std::exp(-I * flux)) < 1e-5);
}

TEST_CASE("inner product") {
    GridParams g{1.0 / 1024.0, 1.0, 2.0};
    const Graph line = line_graph(g);
    GraphState a = line.sample([](const std::string&, double x) { return Complex(std::exp(-x * x), x) * box(x, -1.5, 1.5); });
    a.normalize();
    CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-12);
    const GraphState b = line.sample([](const std::string&, double x) { return Complex(std::cos(x), 0.3) * box(x, -1.0, 1.0); });
    CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-15);
    CHECK(inner_product(b, b).real() > 0.0);

    const GraphState ind = line.sample([](const std::string&, double x) { return Complex(box(x, 0.0, 1.0)); });
    for (double t : {0.25, 0.5, -0.375, 1.0}) {
        CHECK(std::abs(inner_product(transport(line, ind, t), ind) - (1.0 - std::abs(t))) < 1e-12);
    }

    GridParams other = g;
    other.dx = 1.0 / 512.0;
    CHECK_THROWS_AS(inner_product(a, line_graph(other).zero_state()), InvalidInput);
}

TEST_CASE("non-commensurate times and truncation") {
    GridParams g{1.0 / 256.0, 1.0, 2.0};
    const Graph line = line_graph(g);
    const GraphState ind = line.sample([](const std::string&, double x) { return Complex(box(x, 0.0, 1.0)); });
    CHECK_THROWS_AS(transport(line, ind, 0.001), InvalidInput);
    EvolveOptions opt;
    opt.allow_interpolation = true;
    const GraphState v = transport(line, ind, 0.001, opt);
    CHECK(v.interpolated);
    CHECK_THROWS_AS(transport(line, ind, 1.5), TruncationError);
}

TEST_CASE("state CSV export") {
    GridParams g{0.25, 1.0, 1.0};
    const GraphState s = ring_graph(1.0, 1.0, g).sample([](const std::string&, double x) { return Complex(x, -x); });
    std::ostringstream os;
    write_state_csv(os, s, "ring snapshot");
    const std::string out = os.str();
    CHECK(out.rfind("# anchor: ring snapshot\n", 0) == 0);
    CHECK(out.find("edge_id,x,re,im\n") != std::string::npos);
    CHECK(out.find("ring,0.125,0.125,-0.125\n") != std::string::npos);
}
