#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mono/quadrature.hpp"
#include "mono/stable_laws.hpp"

using namespace mono;

TEST_CASE("stable characteristic functions") {
    for (double t : {-3.0, -1.0, -0.2, 0.0, 0.4, 1.0, 2.5}) {
        CHECK(std::abs(stable_cf({2.0, 0.7, 0.0, 1.0}, t) - std::exp(-t * t)) < 1e-15);
        CHECK(std::abs(stable_cf({1.0, 0.0, 0.0, 1.0}, t) - std::exp(-std::abs(t))) < 1e-15);
        const double s = 1.3;
        const double sg = t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0);
        const Complex half = std::exp(-s * std::sqrt(std::abs(t)) * (1.0 - I * sg));
        CHECK(std::abs(stable_cf({0.5, 1.0, 0.0, s}, t) - half) < 1e-14);
    }
    CHECK(stable_cf({0.7, 0.3, 1.0, 2.0}, 0.0) == Complex(1.0));
}

TEST_CASE("modulus, symmetry and the convolution law") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        StableLawParams p{0.1 + 1.9 * u(rng), 2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0, 0.1 + 2.0 * u(rng)};
        const double t = 6.0 * u(rng) - 3.0;
        const Complex v = stable_cf(p, t);
        CHECK(std::abs(std::abs(v) - std::exp(-p.sigma * std::pow(std::abs(t), p.alpha))) < 1e-14);
        CHECK(std::abs(stable_cf(p, -t) - std::conj(v)) < 1e-14);

        StableLawParams q{p.alpha, 0.0, 0.0, p.sigma};
        const double b1 = 0.1 + u(rng), b2 = 0.1 + u(rng);
        const double b = std::pow(std::pow(b1, q.alpha) + std::pow(b2, q.alpha), 1.0 / q.alpha);
        CHECK(std::abs(stable_cf(q, b1 * t) * stable_cf(q, b2 * t) - stable_cf(q, b * t)) < 1e-12);
    }
    CHECK_THROWS_AS(StableLawParams({2.5, 0.0, 0.0, 1.0}).validate(), InvalidInput);
    CHECK_THROWS_AS(StableLawParams({1.0, 1.5, 0.0, 1.0}).validate(), InvalidInput);
    CHECK_THROWS_AS(StableLawParams({1.0, 0.0, 0.0, 0.0}).validate(), InvalidInput);
}

TEST_CASE("d(alpha)") {
    CHECK(std::abs(d_alpha(0.5) - 0.5 * std::sqrt(2.0 * pi)) < 1e-14);
    CHECK(std::abs(d_alpha(0.5) - 1.25331) < 1e-5);
    CHECK(d_alpha(1.0) == doctest::Approx(pi / 2.0).epsilon(1e-15));
    CHECK(std::abs(d_alpha(1.5) - std::sqrt(2.0 * pi)) < 1e-13);
    CHECK(std::abs(d_alpha(1.5) - 2.50663) < 1e-5);
    CHECK(d_alpha(2.0) == std::numeric_limits<double>::infinity());
    // Continuous through alpha = 1.
    CHECK(std::abs(d_alpha(1.0 + 1e-7) - pi / 2.0) < 1e-5);
    CHECK(std::abs(d_alpha(1.0 - 1e-7) - pi / 2.0) < 1e-5);
}

TEST_CASE("parameters from tails") {
    const StableLawParams sym = params_from_tails(0.3, 0.3, 0.5);
    CHECK(sym.beta == 0.0);
    CHECK(std::abs(sym.sigma - 0.6 * d_alpha(0.5)) < 1e-15);
    CHECK(params_from_tails(0.7, 0.0, 0.5).beta == 1.0);
    CHECK(params_from_tails(0.0, 0.7, 1.5).beta == -1.0);

    // Boundary-coupled interval: c1 = c2 = c S / (2 pi) gives tau = 2 sigma = c S.
    const double c = 1.7, S = 0.45;
    const StableLawParams k = params_from_tails(c * S / (2.0 * pi), c * S / (2.0 * pi), 1.0);
    CHECK(std::abs(2.0 * k.sigma - c * S) < 1e-14);

    const StableLawParams a = params_from_tails(0.2, 0.5, 1.5);
    const StableLawParams b = params_from_tails(0.6, 1.5, 1.5);
    CHECK(std::abs(b.sigma - 3.0 * a.sigma) < 1e-14);
    CHECK(std::abs(b.beta - a.beta) < 1e-15);

    CHECK_THROWS_AS(params_from_tails(0.0, 0.0, 0.5), InvalidInput);
    CHECK_THROWS_AS(params_from_tails(-0.1, 0.5, 0.5), InvalidInput);
    CHECK_THROWS_AS(params_from_tails(0.1, 0.5, 2.0), InvalidInput);
    CHECK(gaussian_params(3.0).sigma == 1.5);
    CHECK(gaussian_params(3.0).alpha == 2.0);
}

TEST_CASE("one-sided 1/2 law") {
    const double s = 1.6;
    CHECK(std::abs(levy_half(s, 1e14).cdf - 1.0) < 1e-6);
    CHECK(levy_half(s, 1e-3).cdf < 1e-100);
    CHECK_THROWS_AS(levy_half(s, 0.0), InvalidInput);
    CHECK_THROWS_AS(levy_half(s, -1.0), InvalidInput);
    CHECK_THROWS_AS(levy_half(0.0, 1.0), InvalidInput);

    // Mass in the log variable up to Lambda, plus the leading tail 2 s (2 pi Lambda)^{-1/2} (1 - s^2/(6 Lambda)).
    const double Lam = 1e8;
    quad::Options opt;
    opt.abs_tol = 1e-12;
    opt.initial_panels = 64;
    const double body = quad::adaptive_real(
        [&](double u) {
            const double l = std::exp(u);
            return levy_half(s, l).pdf * l;
        },
        std::log(1e-4), std::log(Lam), opt);
    const double tail = 2.0 * s / std::sqrt(2.0 * pi * Lam) * (1.0 - s * s / (6.0 * Lam));
    CHECK(std::abs(body + tail - 1.0) < 1e-6);

    // The cdf is the integral of the pdf.
    const double part = quad::adaptive_real([&](double l) { return levy_half(s, l).pdf; }, 1e-3, 5.0, opt);
    CHECK(std::abs(part - (levy_half(s, 5.0).cdf - levy_half(s, 1e-3).cdf)) < 1e-10);
}

TEST_CASE("Fourier transform of the 1/2 law") {
    const double s = 1.6;
    // Rotate the contour to lambda = r e^{i pi/4}; both exponentials decay there.
    const Complex w = std::exp(I * pi / 4.0);
    auto rho = [&](Complex l) { return s / std::sqrt(2.0 * pi) * std::pow(l, -1.5) * std::exp(-s * s / (2.0 * l)); };
    quad::Options opt;
    opt.abs_tol = 1e-12;
    opt.initial_panels = 128;
    for (double t : {0.5, 1.0, 2.0}) {
        const double R = 80.0 / t;
        const Complex ft =
            quad::adaptive([&](double r) { return rho(w * r) * std::exp(I * t * w * r) * w; }, 0.0, R, opt).value;
        const StableLawParams p{0.5, 1.0, 0.0, s};
        CHECK(std::abs(ft - stable_cf(p, t)) < 1e-4);
        CHECK(std::abs(std::conj(ft) - stable_cf(p, -t)) < 1e-4);
    }
}

TEST_CASE("attraction checks") {
    auto tri = [](double t) { return Complex(std::max(1.0 - std::abs(t), 0.0)); };
    const auto r = attraction_check(tri, 1.0, 1.0, {1e2, 1e3, 1e4}, {0.5, 1.0, 2.0});
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows.back().max_rel_deviation < 1e-3);
    CHECK(r.rows[2].max_rel_deviation < r.rows[1].max_rel_deviation);
    CHECK(r.converging);

    auto cauchy = [](double t) { return std::exp(-0.8 * std::abs(t)); };
    const auto c = attraction_check([&](double t) { return Complex(cauchy(t)); }, 1.0, 0.8, {1.0, 10.0, 1e3, 1e5},
                                    {0.25, 1.0, 3.0});
    for (const auto& row : c.rows) CHECK(row.max_rel_deviation < 1e-6);
}

TEST_CASE("stable sampling") {
    const StableLawParams p{1.0, 0.0, 0.0, 1.0};
    std::mt19937_64 a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(sample_stable(p, a) == sample_stable(p, b));

    std::mt19937_64 rng(7);
    const int N = 40000;
    std::vector<double> xs(N);
    for (double& x : xs) x = sample_stable(p, rng);
    for (double t : {0.3, 1.0, 2.0}) {
        double re = 0.0;
        for (double x : xs) re += std::cos(t * x);
        CHECK(std::abs(re / N - std::exp(-t)) < 0.02);
    }

    const StableLawParams g{2.0, 0.0, 0.0, 1.0};
    double m2 = 0.0;
    for (int i = 0; i < N; ++i) {
        const double x = sample_stable(g, rng);
        m2 += x * x;
    }
    CHECK(std::abs(m2 / N - 2.0) < 0.1);
}
