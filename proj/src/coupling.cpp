#include "mono/coupling.hpp"

#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>

#include "mono/graph_spectral.hpp"

namespace mono {

CharFn couple(const CharFn& s1, const CharFn& s2) { return CharFn::product({s1, s2}); }

CharFn rescale(const CharFn& s, double a, double b) {
    if (!(a > 0.0)) throw InvalidInput("rescale: a must be positive");
    return CharFn::custom([s, a, b](Complex z) { return s((z - b) / a); }, "rescaled_" + s.label());
}

CharFn reflect(const CharFn& s) {
    return CharFn::custom([s](Complex z) { return std::conj(s(-std::conj(z))); }, "reflected_" + s.label());
}

NfoldValue nfold_limit(const CharFn& s, double mu, long n, Complex z) {
    if (n < 1) throw InvalidInput("nfold_limit: n must be at least 1");
    const double nn = static_cast<double>(n);
    auto power = [&](Complex w) {
        const Complex v = s(w / nn + mu);
        if (std::abs(v) > 1.0 + 1e-12) throw InvalidInput("nfold_limit: |S| > 1, not a contraction");
        return std::pow(v, nn);
    };
    NfoldValue out;
    out.raw = power(z);
    const Complex anchor = power(projective_anchor);
    out.normalized = out.raw;
    if (std::abs(anchor) > 0.0) out.normalized *= std::conj(anchor) / std::abs(anchor);
    return out;
}

BoundaryData boundary_data(const CharFn& s, double mu, double height) {
    BoundaryData b;
    const Complex v = s(Complex(mu, height));
    b.modulus = std::abs(v);
    b.inner = std::abs(b.modulus - 1.0) < 1e-5;
    const double h = 1e-5;
    const Complex vp = s(Complex(mu + h, height)), vm = s(Complex(mu - h, height));
    if (std::abs(vp) > 0.0 && std::abs(vm) > 0.0) b.ell = std::arg(vp / vm) / (2.0 * h);
    return b;
}

Complex volterra_limit(const CharFn& s, long n, Complex z) {
    if (s.kind() != CharFn::Kind::RankOne) throw InvalidInput("volterra_limit needs a rank-one characteristic function");
    if (n < 1) throw InvalidInput("volterra_limit: n must be at least 1");
    const double nn = static_cast<double>(n);
    // exp(n log S) keeps the phase branch consistent for large n.
    return std::exp(nn * std::log(s(nn * z)));
}

Complex coupling_weyl_limit(const CharFn& s, long n, Complex z) {
    const Complex sn = volterra_limit(s, n, z);
    return (sn - 1.0) / (I * s.t() * (sn + 1.0));
}

Complex volterra_weyl(double ell, Complex z) { return -(2.0 / ell) * stable_tan(ell / (2.0 * z)); }

Atom volterra_atom(double ell, long k) {
    const double odd = 2.0 * static_cast<double>(k) + 1.0;
    return {ell / (odd * pi), 4.0 / (pi * pi * odd * odd)};
}

Complex volterra_atoms_stieltjes(double ell, Complex z, long n_terms) {
    // Atoms k and -k-1 sit symmetrically at +-z_k with equal weights.
    Complex sum{};
    for (long k = n_terms; k >= 0; --k) {
        const Atom a = volterra_atom(ell, k);
        sum += a.weight * (1.0 / (a.position - z) + 1.0 / (-a.position - z));
    }
    // Remaining pairs contribute -(2/z) times their mass to leading order.
    const double tail_mass = boost::math::trigamma(static_cast<double>(n_terms) + 1.5) / (pi * pi);
    return sum - 2.0 / z * tail_mass;
}

}  // namespace mono
