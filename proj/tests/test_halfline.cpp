#include <doctest.h>

#include <cmath>

#include "mono/halfline.hpp"
#include "mono/monitoring.hpp"
#include "mono/quadrature.hpp"
#include "mono/stable_laws.hpp"

using namespace mono;

namespace {

const double r2 = std::sqrt(2.0);

HalfLineState exp_state() {
    return HalfLineState::from_function([](double x) { return Complex(r2 * std::exp(-x)); }, 1e-3, 40.0, false);
}

// int_0^inf f(k) e^{i s k^2} dk along the ray k = e^{i pi/4} r; f analytic in the sector.
Complex rotated(const std::function<Complex(Complex)>& f, double s) {
    const Complex w = std::exp(I * pi / 4.0);
    quad::Options opt;
    opt.abs_tol = 1e-12;
    opt.initial_panels = 64;
    const double R = std::sqrt(60.0 / s);
    return quad::adaptive([&](double r) { return f(w * r) * std::exp(-s * r * r) * w; }, 0.0, R, opt).value;
}

}  // namespace

TEST_CASE("sine transform of the exponential state") {
    const HalfLineState phi = exp_state();
    CHECK(std::abs(phi.norm() - 1.0) < 1e-10);
    for (double k : {0.5, 1.0, 3.0, 10.0, 50.0}) {
        const double expect = r2 * std::sqrt(2.0 / pi) * k / (1.0 + k * k);
        CHECK(std::abs(sine_transform(phi, k) - expect) < 1e-8);
    }
    CHECK_THROWS_AS(sine_transform(phi, 0.0), InvalidInput);
    CHECK(std::abs(spectral_distribution(phi, BoundaryCondition::dirichlet()).continuous_mass() - 1.0) < 1e-6);
}

TEST_CASE("boundary data by extrapolation") {
    const HalfLineState phi = exp_state();
    CHECK(std::abs(phi.value0() - r2) < 1e-8);
    CHECK(std::abs(phi.derivative0() + r2) < 1e-6);
    const HalfLineState odd = HalfLineState::from_samples(Eigen::VectorXcd::Constant(7, 1.0), 0.5, true);
    CHECK(std::abs(odd.norm() - 1.0) < 1e-12);
}

TEST_CASE("compactly supported states have transforms decaying like k^-2") {
    auto f = [](double x) { return x > 1.0 && x < 3.0 ? std::pow((x - 1.0) * (x - 3.0), 2) : 0.0; };
    const HalfLineState phi = HalfLineState::from_function([&](double x) { return Complex(f(x)); }, 1e-3, 5.0, false);
    // Two integrations by parts: |transform| <= sqrt(2/pi) int |f''| / k^2.
    double f2 = 0.0;
    const double h = 1e-4;
    for (double x = 1.0 + h / 2; x < 3.0; x += h) f2 += std::abs(12.0 * x * x - 48.0 * x + 44.0) * h;
    const double bound = std::sqrt(2.0 / pi) * f2;
    for (double k : {20.0, 40.0, 80.0, 160.0, 320.0}) CHECK(k * k * std::abs(sine_transform(phi, k)) <= bound * 1.001);
}

TEST_CASE("Dirichlet distribution has the closed-form tail") {
    const auto d = spectral_distribution(exp_state(), BoundaryCondition::dirichlet());
    for (double l : {0.5, 1.0, 10.0, 100.0}) {
        const double k = std::sqrt(l);
        const double expect = 2.0 / pi * (pi / 2.0 - std::atan(k) + k / (1.0 + l));
        CHECK(std::abs(d.upper_tail(l) - expect) < 1e-6);
        CHECK(std::abs(d.N(l) - (1.0 - expect)) < 1e-6);
    }
    CHECK(d.N(-1.0) == 0.0);
    CHECK(d.lower_tail(5.0) == 0.0);
    double prev = 0.0;
    for (double l : {0.01, 0.1, 1.0, 5.0, 50.0, 500.0}) {
        const double n = d.N(l);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("mixed boundary: negative spectrum only from the bound state") {
    const HalfLineState phi = exp_state();
    for (double g : {-1.0, 0.0}) {
        const auto d = spectral_distribution(phi, BoundaryCondition::mixed(g));
        CHECK(!d.has_bound_state);
        CHECK(d.N(-0.5) == 0.0);
        CHECK(std::abs(d.continuous_mass() - 1.0) < 1e-6);
    }
    const auto one = spectral_distribution(phi, BoundaryCondition::mixed(1.0));
    CHECK(one.has_bound_state);
    CHECK(one.bound_energy == -1.0);
    CHECK(std::abs(one.bound_weight - 1.0) < 1e-8);

    const auto two = spectral_distribution(phi, BoundaryCondition::mixed(2.0));
    CHECK(std::abs(two.bound_weight - 8.0 / 9.0) < 1e-8);
    CHECK(std::abs(two.bound_weight + two.continuous_mass() - 1.0) < 1e-6);
    CHECK(std::abs(two.N(-4.5)) == 0.0);
    CHECK(std::abs(two.N(-3.5) - 8.0 / 9.0) < 1e-8);
}

TEST_CASE("mixed density has the alpha-parameterized shape") {
    const HalfLineState phi = exp_state();
    for (double alpha : {0.3, -0.4, 1.0}) {
        const double g = (1.0 - std::tan(alpha)) / r2;
        const double c2 = std::pow(std::cos(alpha), 2);
        const auto d = spectral_distribution(phi, BoundaryCondition::mixed(g));
        for (double l : {0.2, 1.0, 4.0, 30.0}) {
            const double k = std::sqrt(l);
            const double rho = d.density_k(k) / (2.0 * k);
            const double overlap = 2.0 * std::pow(1.0 - g, 2) / std::pow(1.0 + l, 2);
            const double shape = std::sqrt(2.0 * l) /
                                 (std::pow(std::sin(alpha) - std::cos(alpha), 2) + 2.0 * l * c2);
            CHECK(std::abs(rho / overlap / shape - r2 * c2 / pi) < 1e-8);
        }
    }
}

TEST_CASE("tail constants") {
    const HalfLineState phi = exp_state();
    const auto dd = spectral_distribution(phi, BoundaryCondition::dirichlet());
    const TailConstants a = tail_constants(dd, 0.5);
    CHECK(std::abs(a.c1 - 4.0 / pi) / (4.0 / pi) < 0.05);
    CHECK(a.c2 == 0.0);
    CHECK(!a.inconclusive);

    const auto dm = spectral_distribution(phi, BoundaryCondition::mixed(2.0));
    const TailConstants b = tail_constants(dm, 1.5);
    const double expect = 2.0 / (3.0 * pi) * 2.0;
    CHECK(std::abs(b.c1 - expect) / expect < 0.05);

    // Finite variance: the lambda^2 tail vanishes.
    const auto gauss = distribution_from_density([](double k) { return 4.0 / std::sqrt(pi) * k * k * std::exp(-k * k); });
    CHECK(std::abs(gauss.continuous_mass() - 1.0) < 1e-8);
    const TailConstants c = tail_constants(gauss, 2.0);
    CHECK(c.c1 == 0.0);
    CHECK(c.c2 == 0.0);
    CHECK_THROWS_AS(tail_constants(gauss, 2.5), InvalidInput);
}

TEST_CASE("stable sigma") {
    const HalfLineState phi = exp_state();
    const StableSigma d = stable_sigma(BoundaryCondition::dirichlet(), phi);
    CHECK(d.alpha == 0.5);
    CHECK(std::abs(d.sigma - 2.0 * std::sqrt(2.0 / pi)) < 1e-7);
    CHECK(std::abs(d.sigma - 1.59577) < 1e-5);
    const StableSigma m = stable_sigma(BoundaryCondition::mixed(2.0), phi);
    CHECK(m.alpha == 1.5);
    CHECK(std::abs(m.sigma - 4.0 / 3.0 * std::sqrt(2.0 / pi)) < 1e-5);
    CHECK(std::abs(m.sigma - 1.0638) < 1e-4);
    CHECK(stable_sigma(BoundaryCondition::mixed(1.0), phi).degenerate);
    CHECK(!m.degenerate);
}

TEST_CASE("sigma from tails agrees with the boundary formula") {
    const HalfLineState phi = exp_state();
    for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::mixed(2.0)}) {
        const StableSigma ss = stable_sigma(bc, phi);
        const TailConstants tc = tail_constants(spectral_distribution(phi, bc), ss.alpha);
        CHECK(std::abs((tc.c1 + tc.c2) * d_alpha(ss.alpha) - ss.sigma) / ss.sigma < 0.05);
    }
}

TEST_CASE("survival amplitude from the spectral distribution") {
    const auto d = spectral_distribution(exp_state(), BoundaryCondition::dirichlet());
    CHECK(std::abs(d.amplitude(0.0) - 1.0) < 1e-6);
    for (double s : {1.0, 1e-2, 1e-4}) {
        const Complex oracle = rotated([](Complex k) { return 4.0 / pi * k * k / std::pow(1.0 + k * k, 2); }, s);
        CHECK(std::abs(d.amplitude(s) - oracle) < 1e-6);
        CHECK(std::abs(d.amplitude(-s) - std::conj(oracle)) < 1e-6);
    }
}

TEST_CASE("tail classification") {
    const HalfLineState phi = exp_state();
    CHECK(classify_by_tails(spectral_distribution(phi, BoundaryCondition::dirichlet())).kind == ZenoKind::AntiZeno);
    CHECK(classify_by_tails(spectral_distribution(phi, BoundaryCondition::mixed(2.0))).kind == ZenoKind::Zeno);
    // dN = d lambda / (1 + lambda)^2: lambda (1 - N) -> 1, a resonant law with tau = pi.
    const auto res = distribution_from_density([](double k) { return 2.0 * k / std::pow(1.0 + k * k, 2); });
    const Classification c = classify_by_tails(res);
    CHECK(c.kind == ZenoKind::Resonant);
    CHECK(std::abs(c.tau - pi) / pi < 0.01);
}
