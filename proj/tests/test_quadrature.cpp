#include <doctest.h>

#include <cmath>

#include "mono/quadrature.hpp"

using namespace mono;

TEST_CASE("Gauss-Kronrod integrates smooth and oscillatory functions") {
    const auto r = quad::adaptive([](double x) { return Complex(std::sin(x)); }, 0.0, pi);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2.0) < 1e-12);
    const auto w = quad::adaptive([](double x) { return std::exp(I * 20.0 * x); }, 0.0, 2.0 * pi);
    CHECK(std::abs(w.value) < 1e-10);
}

TEST_CASE("adaptive refinement handles an integrable endpoint singularity") {
    quad::Options opt;
    opt.abs_tol = 1e-9;
    bool ok = false;
    const double v = quad::adaptive_real([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt, &ok);
    CHECK(std::abs(v - 2.0) < 1e-6);
}

TEST_CASE("Gauss-Legendre rules are exact for polynomials of degree 2n-1") {
    const auto& rule = quad::gauss_legendre(8);
    double s = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 14);
    CHECK(std::abs(s - 2.0 / 15.0) < 1e-14);
    const Complex c = quad::composite_gl([](double x) { return Complex(x * x, -x); }, 0.0, 3.0, 4);
    CHECK(std::abs(c - Complex(9.0, -4.5)) < 1e-13);
}
