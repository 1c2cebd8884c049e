#include "mono/graph_spectral.hpp"

#include <cmath>
#include <limits>

namespace mono {

namespace {

Complex unimodular_theta(const GraphSpec& spec) {
    if (spec.theta.is_infinite() || std::abs(std::abs(spec.theta.value) - 1.0) > 1e-12)
        throw InvalidInput("theta must be unimodular for the closed forms");
    return spec.theta.value;
}

bool is_case_i(GraphCase c) { return c == GraphCase::I || c == GraphCase::IStar; }

}  // namespace

const char* to_string(GraphCase c) {
    switch (c) {
        case GraphCase::IStar: return "IStar";
        case GraphCase::I: return "I";
        case GraphCase::II: return "II";
        case GraphCase::III: return "III";
    }
    return "?";
}

GraphCase graph_case_from_string(const std::string& s) {
    if (s == "IStar" || s == "I*" || s == "istar") return GraphCase::IStar;
    if (s == "I" || s == "i") return GraphCase::I;
    if (s == "II" || s == "ii") return GraphCase::II;
    if (s == "III" || s == "iii") return GraphCase::III;
    throw InvalidInput("unknown graph case '" + s + "'");
}

void GraphSpec::validate() const {
    if (!(k >= 0.0 && k < 1.0)) throw InvalidInput("gate k must lie in [0, 1)");
    switch (graph_case) {
        case GraphCase::IStar:
            if (nu == mu) throw InvalidInput("Case I* requires nu != mu");
            break;
        case GraphCase::I: break;
        case GraphCase::II:
            if (!(nu > mu)) throw InvalidInput("Case II requires nu > mu");
            if (k != 0.0) throw InvalidInput("Case II model requires k = 0");
            break;
        case GraphCase::III:
            if (!(nu > mu)) throw InvalidInput("Case III requires nu > mu");
            if (!(k > 0.0)) throw InvalidInput("Case III requires k > 0");
            break;
    }
}

bool GraphSpec::exceptional() const {
    return graph_case == GraphCase::IStar || (graph_case == GraphCase::I && k == 0.0);
}

TripleParams triple_params(const GraphSpec& spec) {
    spec.validate();
    TripleParams p;
    p.k = spec.k;
    p.theta = unimodular_theta(spec);
    if (is_case_i(spec.graph_case)) {
        p.e2ialpha = p.theta;
        return p;
    }
    p.ell = spec.ell();
    p.ell_prime = spec.graph_case == GraphCase::III ? std::log(1.0 / spec.k) : 0.0;
    const double q = std::exp(-(p.ell + p.ell_prime));
    p.e2ialpha = (p.theta + q) / (q * p.theta + 1.0);
    return p;
}

double amplitude_A(double phi, double L) {
    const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
    return c * c / std::tanh(0.5 * L) + s * s * std::tanh(0.5 * L);
}

Complex stable_tan(Complex w) {
    const double x = w.real(), y = w.imag();
    if (std::abs(y) < 1.0) return std::tan(w);
    const double t = std::exp(-2.0 * std::abs(y));
    const double sg = y > 0 ? 1.0 : -1.0;
    const Complex num(2.0 * t * std::sin(2.0 * x), sg * (1.0 - t * t));
    const double den = 2.0 * t * std::cos(2.0 * x) + 1.0 + t * t;
    return num / den;
}

Complex livsic_closed(const GraphSpec& spec, Complex z) {
    const TripleParams p = triple_params(spec);
    if (is_case_i(spec.graph_case)) return 0.0;
    const Complex w = std::exp(I * z * p.ell);
    const double a = std::exp(-p.ell);
    const Complex phase = std::conj(p.e2ialpha);
    if (spec.graph_case == GraphCase::II) return phase * (w - a) / (a * w - 1.0);
    return phase * p.k * (w - a) / (p.k * p.k * a * w - 1.0);
}

Complex weyl_closed(const GraphSpec& spec, Complex z) {
    const TripleParams p = triple_params(spec);
    if (is_case_i(spec.graph_case)) return I;
    const double phi = std::arg(p.theta);
    const double L = p.ell + p.ell_prime;
    const Complex arg = 0.5 * p.ell * z + 0.5 * I * p.ell_prime - 0.5 * phi;
    if (spec.graph_case == GraphCase::II && z.imag() == 0.0 && std::abs(std::cos(arg.real())) < 1e-14)
        throw PoleError("weyl_closed: real pole of the Case II Weyl function", z);
    return amplitude_A(phi, L) * stable_tan(arg) + std::sin(phi) / std::sinh(L);
}

Complex char_closed(const GraphSpec& spec, Complex z) {
    const TripleParams p = triple_params(spec);
    const Complex phase = std::conj(p.e2ialpha);
    switch (spec.graph_case) {
        case GraphCase::IStar: return 0.0;
        case GraphCase::I: return phase * p.k;
        case GraphCase::II: return phase * std::exp(I * p.ell * z);
        case GraphCase::III: return phase * p.k * std::exp(I * p.ell * z);
    }
    return 0.0;
}

HerglotzMeasure spectral_measure(const GraphSpec& spec) {
    const TripleParams p = triple_params(spec);
    HerglotzMeasure mu;
    if (is_case_i(spec.graph_case)) {
        mu.variant = LebesgueDensity{[](double) { return 1.0 / pi; }, 1.0, false};
        return mu;
    }
    const double phi = std::arg(p.theta);
    const double A = amplitude_A(phi, p.ell + p.ell_prime);
    if (spec.graph_case == GraphCase::II) {
        mu.variant = AtomicLattice{(pi + phi) / p.ell, 2.0 * pi / p.ell, 2.0 / p.ell * A};
        return mu;
    }
    mu.variant = PoissonDensity{A, std::exp(-p.ell_prime), p.ell, phi};
    return mu;
}

std::pair<GraphSpec, GraphSpec> case_iii_factors(const GraphSpec& spec) {
    if (spec.graph_case != GraphCase::III) throw InvalidInput("case_iii_factors needs a Case III spec");
    const TripleParams p = triple_params(spec);
    GraphSpec gate = spec, interval = spec;
    gate.graph_case = GraphCase::I;
    gate.theta = Extended(1.0);
    interval.graph_case = GraphCase::II;
    interval.k = 0.0;
    // Pick the interval's theta so its phase e^{2i alpha} matches the Case III one.
    const double a = std::exp(-spec.ell());
    interval.theta = Extended((p.e2ialpha - a) / (1.0 - a * p.e2ialpha));
    return {gate, interval};
}

Complex transmission(double k, double ell, Complex theta, double lambda) {
    if (!(k >= 0.0 && k < 1.0)) throw InvalidInput("transmission: k must lie in [0, 1)");
    const Complex w = std::exp(I * ell * lambda);
    return (theta + w * k) / (w + k * theta);
}

Complex char_interval(double k, double ell, Complex theta, Complex z) {
    if (!(k > 0.0 && k < 1.0)) throw InvalidInput("char_interval: k must lie in (0, 1)");
    const double a = std::exp(-ell);
    const Complex w = std::exp(I * ell * z);
    return (theta + a * k) / (k * a * theta + 1.0) * (w + k * theta) / (theta + w * k);
}

Complex interval_kappa(double k, double ell, Complex theta) {
    const double a = std::exp(-ell);
    return (k * theta + a) / (k * theta * a + 1.0);
}

std::vector<Complex> interval_zeros(double k, double ell, Complex theta, int n_min, int n_max) {
    std::vector<Complex> zs;
    const double base = std::arg(-k * theta);
    for (int n = n_min; n <= n_max; ++n)
        zs.emplace_back((base + 2.0 * pi * n) / ell, std::log(1.0 / k) / ell);
    return zs;
}

Extended theta_kappa_map(const GraphSpec& spec, MapDirection dir, const Extended& value) {
    spec.validate();
    if (!value.is_infinite() && std::abs(value.value) > 1.0 + 1e-12 && dir == MapDirection::KappaToTheta)
        throw InvalidInput("theta_kappa_map: |kappa| must not exceed 1");
    if (is_case_i(spec.graph_case)) return value;
    const double b = spec.graph_case == GraphCase::II ? std::exp(-spec.ell()) : spec.k * std::exp(-spec.ell());
    // Theta = -m_b(kappa) and kappa = m_b(-Theta), m_b(x) = (x - b)/(b x - 1).
    const bool forward = dir == MapDirection::KappaToTheta;
    if (value.is_infinite()) return Extended(forward ? Complex(-1.0 / b) : Complex(1.0 / b));
    const Complex x = forward ? value.value : -value.value;
    const Complex den = b * x - 1.0;
    if (std::abs(den) < 1e-300) return Extended::infinity();
    const Complex m = (x - b) / den;
    return Extended(forward ? -m : m);
}

double log_potential(const GraphSpec& spec, Complex z) {
    const Complex s = char_closed(spec, z);
    if (s == Complex{}) return -std::numeric_limits<double>::infinity();
    if (spec.graph_case == GraphCase::III || spec.graph_case == GraphCase::II) {
        // |k e^{i l z}| evaluated without forming the exponential.
        const double kk = spec.graph_case == GraphCase::III ? std::log(spec.k) : 0.0;
        return kk - spec.ell() * z.imag();
    }
    return std::log(std::abs(s));
}

}  // namespace mono
