#include <doctest.h>

#include <cmath>
#include <random>

#include "mono/coupling.hpp"
#include "mono/graph_spectral.hpp"

using namespace mono;

namespace {

std::vector<Complex> upper_points(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.05, 5.0);
    std::vector<Complex> out;
    for (int i = 0; i < n; ++i) out.emplace_back(re(rng), im(rng));
    return out;
}

HerglotzMeasure single_atom(double a) {
    HerglotzMeasure m;
    m.variant = DiscreteAtoms{{a}, {1.0}};
    return m;
}

}  // namespace

TEST_CASE("coupling multiplies characteristic functions") {
    const double l1 = 0.7, l2 = 1.9, k1 = 0.4, k2 = 0.85;
    const CharFn a = couple(CharFn::singular_inner(l1), CharFn::singular_inner(l2));
    const CharFn b = couple(CharFn::constant(k1), CharFn::constant(k2));
    const CharFn c = couple(CharFn::product_form(k1, l1, 1.0), CharFn::product_form(k2, l2, 1.0));
    for (Complex z : upper_points(200, 3)) {
        CHECK(std::abs(a(z) - std::exp(I * (l1 + l2) * z)) <= 4e-15 * std::max(1.0, std::abs(a(z))));
        CHECK(b(z) == Complex(k1 * k2));
        CHECK(std::abs(c(z) - k1 * k2 * std::exp(I * (l1 + l2) * z)) < 1e-15);
        const CharFn s1 = CharFn::product_form(k1, l1, std::exp(0.3 * I));
        const CharFn s2 = CharFn::rank_one(single_atom(0.2), 0.8);
        const CharFn p = couple(s1, s2);
        CHECK(std::abs(std::abs(p(z)) - std::abs(s1(z)) * std::abs(s2(z))) < 1e-15);
    }
}

TEST_CASE("log potential is additive under coupling") {
    GraphSpec s3{GraphCase::III, 0.0, 1.2, 0.45, Extended(std::exp(0.8 * I))};
    const auto [s1, s2] = case_iii_factors(s3);
    for (Complex z : upper_points(100, 5))
        CHECK(std::abs(log_potential(s3, z) - log_potential(s1, z) - log_potential(s2, z)) < 1e-12);
}

TEST_CASE("rescaling") {
    const double ell = 1.3;
    const CharFn s = CharFn::singular_inner(ell);
    for (double c : {0.5, 2.0, 3.0}) {
        const CharFn r = rescale(s, 1.0 / c, 0.0);
        for (Complex z : upper_points(50, 7)) {
            const Complex fz = z / c;
            CHECK(std::abs(std::abs(r(fz)) - std::exp(-ell * z.imag())) < 1e-14);
        }
    }
    // Coupled rescalings of the same inner function rescale by the harmonic combination.
    const double c1 = 0.8, c2 = 2.5, c = 1.0 / (1.0 / c1 + 1.0 / c2);
    const CharFn coupled = couple(rescale(s, c1, 0.0), rescale(s, c2, 0.0));
    const CharFn direct = rescale(s, c, 0.0);
    for (Complex z : upper_points(50, 9)) CHECK(std::abs(coupled(z) - direct(z)) < 1e-12);

    const CharFn shifted = rescale(s, 1.0, 0.6);
    const CharFn ident = rescale(s, 1.0, 0.0);
    const auto grid = upper_points(40, 11);
    for (Complex z : grid) {
        CHECK(std::abs(std::abs(shifted(z)) - std::abs(s(z - 0.6))) < 1e-15);
    }
    CHECK(projective_distance(ident, s, grid) < 1e-15);

    const CharFn r1 = rescale(rescale(s, 1.5, 0.2), 0.4, -0.7);
    const CharFn r2 = rescale(s, 1.5 * 0.4, 0.4 * 0.2 - 0.7);
    CHECK(projective_distance(r1, r2, grid) < 1e-12);
    for (Complex z : grid) CHECK(std::abs(r1(z)) <= 1.0 + 1e-14);

    CHECK_THROWS_AS(rescale(s, 0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(rescale(s, -1.0, 1.0), InvalidInput);
}

TEST_CASE("reflection is an involution") {
    const CharFn s = couple(CharFn::rank_one(single_atom(0.4), 0.6), CharFn::product_form(0.3, 0.9, std::exp(1.1 * I)));
    const CharFn rr = reflect(reflect(s));
    for (Complex z : upper_points(100, 13)) CHECK(std::abs(rr(z) - s(z)) < 1e-15);
}

TEST_CASE("n-fold limits") {
    const CharFn inner = CharFn::singular_inner(1.7);
    for (long n : {1L, 7L, 100L, 10000L})
        for (Complex z : upper_points(20, 17)) {
            const NfoldValue v = nfold_limit(inner, 0.0, n, z);
            CHECK(std::abs(v.raw - std::exp(1.7 * I * z)) < 1e-11);
        }

    const CharFn k = CharFn::constant(0.9);
    double prev = 1.0;
    for (long n : {10L, 100L, 1000L}) {
        const double v = std::abs(nfold_limit(k, 0.0, n, I).raw);
        CHECK(std::abs(v - std::pow(0.9, static_cast<double>(n))) < 1e-15);
        CHECK(v < prev);
        prev = v;
    }

    // Single atom at 0: boundary modulus 1, log-phase derivative 2.
    const CharFn atom = CharFn::rank_one(single_atom(0.0), 1.0);
    const BoundaryData bd = boundary_data(atom, 0.0);
    CHECK(std::abs(bd.modulus - 1.0) < 1e-6);
    CHECK(bd.inner);
    CHECK(std::abs(bd.ell - 2.0) < 1e-4);
    const CharFn limit = CharFn::singular_inner(2.0);
    std::vector<double> errs;
    for (long n : {100L, 1000L, 10000L}) {
        double e = 0.0;
        for (Complex z : {Complex(0.3, 1.0), Complex(-1.0, 0.5), Complex(0.0, 2.0)}) {
            const NfoldValue v = nfold_limit(atom, 0.0, n, z);
            const NfoldValue w = nfold_limit(limit, 0.0, 1, z);
            e = std::max(e, std::abs(v.normalized - w.normalized));
        }
        errs.push_back(e);
    }
    CHECK(errs[2] < errs[1]);
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < 1e-3);

    // A density gives |S(0 + i0)| < 1 and a vanishing limit.
    HerglotzMeasure gauss;
    gauss.variant = LebesgueDensity{[](double x) { return std::exp(-x * x) / std::sqrt(pi); }, 1.0, true};
    const CharFn g = CharFn::rank_one(gauss, 1.0);
    CHECK(boundary_data(g, 0.0).modulus < 0.9);
    CHECK(!boundary_data(g, 0.0).inner);
    CHECK(std::abs(nfold_limit(g, 0.0, 1000, I).raw) < 1e-10);

    CHECK_THROWS_AS(nfold_limit(inner, 0.0, 0, I), InvalidInput);
    const CharFn bad = CharFn::custom([](Complex) { return Complex(1.5); }, "bad");
    CHECK_THROWS_AS(nfold_limit(bad, 0.0, 3, I), InvalidInput);
}

TEST_CASE("Volterra limit of a single atom") {
    const CharFn s = CharFn::rank_one(single_atom(0.0), 1.0);
    for (long n : {10L, 100L, 10000L}) {
        const double nn = static_cast<double>(n);
        CHECK(std::abs(volterra_limit(s, n, I) - std::pow((nn - 1.0) / (nn + 1.0), nn)) < 1e-12);
    }
    CHECK(std::abs(volterra_limit(s, 10000, I) - std::exp(-2.0)) < 2e-5);
    CHECK(std::abs(CharFn::volterra(2.0)(I) - std::exp(-2.0)) < 1e-15);

    // Off-centre atom: first-order convergence, error halves when n doubles.
    const CharFn off = CharFn::rank_one(single_atom(0.5), 1.0);
    const CharFn v = CharFn::volterra(2.0);
    const double e1 = std::abs(volterra_limit(off, 2000, I) - v(I));
    const double e2 = std::abs(volterra_limit(off, 4000, I) - v(I));
    CHECK(std::abs(e2 / e1 - 0.5) < 0.1);

    CHECK_THROWS_AS(volterra_limit(CharFn::constant(0.5), 10, I), InvalidInput);
}

TEST_CASE("Weyl function of the Volterra limit") {
    const CharFn s = CharFn::rank_one(single_atom(0.0), 1.0);
    const Complex m = coupling_weyl_limit(s, 10000, I);
    CHECK(std::abs(m - Complex(0.0, std::tanh(1.0))) < 1e-3);
    CHECK(std::abs(volterra_weyl(2.0, I) - Complex(0.0, 0.7615941559557649)) < 1e-12);

    double mass = 0.0;
    for (long k = 200000; k >= 0; --k) mass += 2.0 * volterra_atom(2.0, k).weight;
    CHECK(std::abs(mass - 1.0) < 1e-5);
    CHECK(std::abs(volterra_atom(3.0, 0).position - 3.0 / pi) < 1e-15);

    for (double ell : {2.0, 0.7})
        for (Complex z : upper_points(5, ell > 1.0 ? 19u : 23u)) {
            const Complex w = z + Complex(0.0, 0.2);
            CHECK(std::abs(volterra_atoms_stieltjes(ell, w) - volterra_weyl(ell, w)) < 1e-6);
        }
}
