#include "mono/herglotz.hpp"

#include <algorithm>
#include <cmath>

#include "mono/quadrature.hpp"

namespace mono {

namespace {

// Herglotz kernel 1/(lambda - z) - lambda/(1 + lambda^2).
Complex kernel(double lambda, Complex z) {
    return 1.0 / (lambda - z) - lambda / (1.0 + lambda * lambda);
}

Complex kernel_derivative(double lambda, Complex z) {
    const double l2 = lambda * lambda;
    return -1.0 / ((lambda - z) * (lambda - z)) - (1.0 - l2) / ((1.0 + l2) * (1.0 + l2));
}

// Integrals of the kernel over [e, inf) and (-inf, e].
Complex kernel_tail_right(double e, Complex z) {
    return -std::log(e - z) + 0.5 * std::log1p(e * e);
}
Complex kernel_tail_left(double e, Complex z) {
    return std::log(e - z) + I * pi - 0.5 * std::log1p(e * e);
}

void require_interior(HalfPlanePoint z) {
    if (!(z.im > 0.0)) throw InvalidInput("evaluation point must lie in the open upper half-plane");
}

Complex density_herglotz(const std::function<double(double)>& rho, double scale, double cutoff,
                         double eps, Complex z, double tail_right, double tail_left) {
    quad::Options opt;
    opt.abs_tol = 0.5 * eps;
    opt.rel_tol = 1e-14;
    opt.initial_panels = static_cast<int>(std::clamp(2.0 * cutoff / scale, 1.0, 400000.0));
    opt.max_intervals = opt.initial_panels + 400000;
    auto res = quad::adaptive([&](double l) { return rho(l) * kernel(l, z); }, -cutoff, cutoff, opt);
    if (!res.converged) throw ToleranceError("Herglotz quadrature did not converge");
    return res.value + tail_right * kernel_tail_right(cutoff, z) +
           tail_left * kernel_tail_left(-cutoff, z);
}

Complex lattice_herglotz(const AtomicLattice& lat, double eps, Complex z) {
    if (!(lat.spacing > 0.0) || !(lat.weight > 0.0)) throw InvalidInput("lattice spacing and weight must be positive");
    const double s = lat.spacing;
    // Index of the first atom at or right of the origin.
    const long j0 = static_cast<long>(std::ceil(-lat.offset / s));
    Complex sum{};
    long n = 0;
    double last_right = 0.0, last_left = 0.0;
    for (;; ++n) {
        const double right = lat.offset + static_cast<double>(j0 + n) * s;
        const double left = lat.offset + static_cast<double>(j0 - 1 - n) * s;
        const Complex pair = kernel(right, z) + kernel(left, z);
        sum += pair;
        last_right = right;
        last_left = left;
        if (std::abs(pair) * lat.weight < 0.1 * eps && std::min(right, -left) > 10.0 * std::abs(z))
            break;
        if (n > 200000000) throw ToleranceError("lattice sum did not converge");
    }
    // Midpoint-rule tails: sum_j g(lambda_j) = (1/s) int g + (s/24) g' at the edge.
    const double er = last_right + 0.5 * s;
    const double el = last_left - 0.5 * s;
    sum += kernel_tail_right(er, z) / s + (s / 24.0) * kernel_derivative(er, z);
    sum += kernel_tail_left(el, z) / s - (s / 24.0) * kernel_derivative(el, z);
    return lat.weight * sum;
}

}  // namespace

double PoissonDensity::density(double lambda) const {
    const double r = decay;
    const double phi = scale * lambda - pi - phase;
    return amplitude / pi * (1.0 - r * r) / (1.0 + r * r - 2.0 * r * std::cos(phi));
}

bool HerglotzMeasure::finite_mass() const {
    if (auto* d = std::get_if<LebesgueDensity>(&variant)) return d->finite_mass;
    return std::holds_alternative<DiscreteAtoms>(variant);
}

double HerglotzMeasure::normalization() const {
    if (auto* a = std::get_if<DiscreteAtoms>(&variant)) {
        double s = 0.0;
        for (size_t i = 0; i < a->positions.size(); ++i)
            s += a->weights[i] / (1.0 + a->positions[i] * a->positions[i]);
        return s;
    }
    return herglotz_eval(*this, {0.0, 1.0}).imag();
}

double HerglotzMeasure::total_mass() const {
    if (auto* a = std::get_if<DiscreteAtoms>(&variant)) {
        double s = 0.0;
        for (double w : a->weights) s += w;
        return s;
    }
    auto* d = std::get_if<LebesgueDensity>(&variant);
    if (!d || !d->finite_mass) throw InvalidInput("measure has infinite total mass");
    quad::Options opt;
    opt.abs_tol = eps;
    opt.initial_panels = static_cast<int>(std::clamp(2.0 * cutoff / d->feature_scale, 1.0, 400000.0));
    return quad::adaptive_real(d->density, -cutoff, cutoff, opt);
}

HerglotzMeasure HerglotzMeasure::reflected() const {
    HerglotzMeasure out = *this;
    if (auto* d = std::get_if<LebesgueDensity>(&variant)) {
        LebesgueDensity r = *d;
        auto rho = d->density;
        r.density = [rho](double l) { return rho(-l); };
        out.variant = r;
    } else if (auto* l = std::get_if<AtomicLattice>(&variant)) {
        AtomicLattice r = *l;
        r.offset = -l->offset;
        out.variant = r;
    } else if (auto* p = std::get_if<PoissonDensity>(&variant)) {
        PoissonDensity r = *p;
        r.phase = -p->phase;
        out.variant = r;
    } else {
        DiscreteAtoms r = std::get<DiscreteAtoms>(variant);
        for (double& x : r.positions) x = -x;
        out.variant = r;
    }
    return out;
}

Complex livsic_from_weyl(const Extended& m) {
    if (m.is_infinite()) return 1.0;
    const Complex den = m.value + I;
    if (den == Complex{}) throw PoleError("livsic_from_weyl: M = -i", m.value);
    return (m.value - I) / den;
}

Complex weyl_from_livsic(Complex s) {
    if (s == Complex(1.0, 0.0)) throw PoleError("weyl_from_livsic: s = 1", s);
    return -I * (s + 1.0) / (s - 1.0);
}

Complex char_from_livsic(Complex s, VonNeumannParam kappa) {
    if (!(std::abs(kappa.kappa) < 1.0)) throw InvalidInput("von Neumann parameter must satisfy |kappa| < 1");
    const Complex den = std::conj(kappa.kappa) * s - 1.0;
    if (den == Complex{}) throw PoleError("char_from_livsic: denominator vanishes", s);
    return (s - kappa.kappa) / den;
}

Complex char_from_weyl(Complex m, VonNeumannParam kappa) {
    const Complex k = kappa.kappa;
    if (!(std::abs(k) < 1.0)) throw InvalidInput("von Neumann parameter must satisfy |kappa| < 1");
    const Complex kb = std::conj(k);
    const Complex den = m + I * (1.0 + kb) / (1.0 - kb);
    if (den == Complex{}) throw PoleError("char_from_weyl: denominator vanishes", m);
    return -(1.0 - k) / (1.0 - kb) * (m - I * (1.0 + k) / (1.0 - k)) / den;
}

Complex herglotz_eval(const HerglotzMeasure& mu, HalfPlanePoint zp) {
    require_interior(zp);
    const Complex z = zp.z();
    if (auto* d = std::get_if<LebesgueDensity>(&mu.variant)) {
        return density_herglotz(d->density, d->feature_scale, mu.cutoff, mu.eps, z,
                                d->density(mu.cutoff), d->density(-mu.cutoff));
    }
    if (auto* p = std::get_if<PoissonDensity>(&mu.variant)) {
        if (!(p->decay > 0.0 && p->decay < 1.0) || !(p->scale > 0.0) || !(p->amplitude > 0.0))
            throw InvalidInput("Poisson density parameters out of range");
        const double period = 2.0 * pi / p->scale;
        // Align the window with whole periods; beyond it use the period mean A/pi.
        const double cutoff = std::ceil(mu.cutoff / period) * period;
        const double mean = p->amplitude / pi;
        PoissonDensity pd = *p;
        return density_herglotz([pd](double l) { return pd.density(l); }, std::min(1.0, period / 4.0),
                                cutoff, mu.eps, z, mean, mean);
    }
    if (auto* l = std::get_if<AtomicLattice>(&mu.variant)) return lattice_herglotz(*l, mu.eps, z);
    const auto& a = std::get<DiscreteAtoms>(mu.variant);
    Complex s{};
    for (size_t i = 0; i < a.positions.size(); ++i) s += a.weights[i] * kernel(a.positions[i], z);
    return s;
}

Complex stieltjes_eval(const HerglotzMeasure& mu, HalfPlanePoint zp) {
    require_interior(zp);
    const Complex z = zp.z();
    if (auto* a = std::get_if<DiscreteAtoms>(&mu.variant)) {
        Complex s{};
        for (size_t i = 0; i < a->positions.size(); ++i) s += a->weights[i] / (a->positions[i] - z);
        return s;
    }
    auto* d = std::get_if<LebesgueDensity>(&mu.variant);
    if (!d || !d->finite_mass) throw InvalidInput("rank-one characteristic function needs a finite-mass measure");
    quad::Options opt;
    opt.abs_tol = 0.5 * mu.eps;
    opt.initial_panels = static_cast<int>(std::clamp(2.0 * mu.cutoff / d->feature_scale, 1.0, 400000.0));
    opt.max_intervals = opt.initial_panels + 400000;
    auto rho = d->density;
    auto res = quad::adaptive([&](double l) { return rho(l) / (l - z); }, -mu.cutoff, mu.cutoff, opt);
    if (!res.converged) throw ToleranceError("Stieltjes quadrature did not converge");
    return res.value;
}

Complex rank_one_char(const HerglotzMeasure& mu, double t, HalfPlanePoint z) {
    if (!(t > 0.0)) throw InvalidInput("rank-one coupling t must be positive");
    const Complex m = stieltjes_eval(mu, z);
    return (1.0 + I * t * m) / (1.0 - I * t * m);
}

KreinValue krein_correction(Complex m, VonNeumannParam kappa) {
    const Complex k = kappa.kappa;
    if (k == Complex(1.0, 0.0)) throw InvalidInput("krein_correction requires kappa != 1");
    const Complex shift = I * (k + 1.0) / (k - 1.0);
    const Complex den = m + shift;
    if (den == Complex{}) throw PoleError("krein_correction: pole of p", m);
    KreinValue out;
    out.p = 1.0 / den;
    out.condition = 1.0 / std::abs(1.0 - k);
    out.ill_conditioned = out.condition > 1e6;
    return out;
}

CharFn CharFn::constant(Complex k) {
    if (std::abs(k) > 1.0) throw InvalidInput("constant characteristic function must satisfy |k| <= 1");
    CharFn f;
    f.kind_ = Kind::Constant;
    f.k_ = std::abs(k);
    f.fn_ = [k](Complex) { return k; };
    f.label_ = "constant";
    return f;
}

CharFn CharFn::singular_inner(double ell) {
    if (!(ell >= 0.0)) throw InvalidInput("singular inner length must be nonnegative");
    CharFn f;
    f.kind_ = Kind::SingularInner;
    f.ell_ = ell;
    f.k_ = 1.0;
    f.fn_ = [ell](Complex z) { return std::exp(I * ell * z); };
    f.label_ = "singular_inner";
    return f;
}

CharFn CharFn::product_form(double k, double ell, Complex phase) {
    if (!(k >= 0.0 && k <= 1.0) || !(ell >= 0.0)) throw InvalidInput("product form needs k in [0,1], ell >= 0");
    CharFn f;
    f.kind_ = Kind::ProductForm;
    f.k_ = k;
    f.ell_ = ell;
    const Complex u = phase / std::abs(phase);
    f.fn_ = [k, ell, u](Complex z) { return u * k * std::exp(I * ell * z); };
    f.label_ = "product_form";
    return f;
}

CharFn CharFn::rank_one(HerglotzMeasure mu, double t) {
    if (!mu.finite_mass()) throw InvalidInput("rank-one characteristic function needs a finite-mass measure");
    if (!(t > 0.0)) throw InvalidInput("rank-one coupling t must be positive");
    CharFn f;
    f.kind_ = Kind::RankOne;
    f.t_ = t;
    f.measure_ = std::make_shared<const HerglotzMeasure>(std::move(mu));
    auto m = f.measure_;
    f.fn_ = [m, t](Complex z) { return rank_one_char(*m, t, {z.real(), z.imag()}); };
    f.label_ = "rank_one";
    return f;
}

CharFn CharFn::volterra(double ell) {
    if (!(ell > 0.0)) throw InvalidInput("Volterra length must be positive");
    CharFn f;
    f.kind_ = Kind::Volterra;
    f.ell_ = ell;
    f.fn_ = [ell](Complex z) { return std::exp(-I * ell / z); };
    f.label_ = "volterra";
    return f;
}

CharFn CharFn::product(std::vector<CharFn> factors) {
    CharFn f;
    f.kind_ = Kind::GenericProduct;
    f.factors_ = factors;
    f.fn_ = [factors = std::move(factors)](Complex z) {
        Complex p{1.0, 0.0};
        for (const auto& s : factors) p *= s(z);
        return p;
    };
    f.label_ = "product";
    return f;
}

CharFn CharFn::custom(std::function<Complex(Complex)> fn, std::string label) {
    CharFn f;
    f.kind_ = Kind::GenericProduct;
    f.fn_ = std::move(fn);
    f.label_ = std::move(label);
    return f;
}

double projective_distance(const CharFn& s1, const CharFn& s2, const std::vector<Complex>& grid,
                           Complex anchor) {
    Complex a = s1(anchor), b = s2(anchor);
    if (std::abs(a) < 1e-300 || std::abs(b) < 1e-300) {
        // Anchor sits on a zero; fall back to the grid point where s2 is largest.
        double best = -1.0;
        for (Complex z : grid) {
            const double v = std::abs(s2(z));
            if (v > best) best = v, a = s1(z), b = s2(z);
        }
    }
    Complex u{1.0, 0.0};
    if (std::abs(a) > 0.0 && std::abs(b) > 0.0) {
        u = a / b;
        u /= std::abs(u);
    }
    double sup = 0.0;
    for (Complex z : grid) sup = std::max(sup, std::abs(s1(z) - u * s2(z)));
    return sup;
}

}  // namespace mono
