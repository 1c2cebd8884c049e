#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "mono/core.hpp"

namespace mono {

// z in the closed upper half-plane. Interior operations require im > 0.
struct HalfPlanePoint {
    double re = 0.0;
    double im = 1.0;
    Complex z() const { return {re, im}; }
};

struct LebesgueDensity {
    std::function<double(double)> density;
    // Length over which the density varies; seeds the quadrature partition.
    double feature_scale = 1.0;
    // Declared when the total mass is finite (rank-one use).
    bool finite_mass = false;
};

struct AtomicLattice {
    double offset = 0.0;
    double spacing = 1.0;
    double weight = 1.0;
};

// (1/pi) A P_r(scale*lambda - pi - phase), P_r the Poisson kernel of the disk.
struct PoissonDensity {
    double amplitude = 1.0;
    double decay = 0.5;
    double scale = 1.0;
    double phase = 0.0;
    double density(double lambda) const;
};

struct DiscreteAtoms {
    std::vector<double> positions;
    std::vector<double> weights;
};

struct HerglotzMeasure {
    std::variant<LebesgueDensity, AtomicLattice, PoissonDensity, DiscreteAtoms> variant;
    double cutoff = 1e4;
    double eps = 1e-8;

    bool finite_mass() const;
    // Integral of dmu/(1+lambda^2).
    double normalization() const;
    // Total mass; throws InvalidInput for infinite-mass variants.
    double total_mass() const;
    // Image under lambda -> -lambda.
    HerglotzMeasure reflected() const;
};

struct VonNeumannParam {
    Complex kappa{};
    bool self_adjoint() const { return std::abs(std::abs(kappa) - 1.0) < 1e-15; }
};

// Cayley pair s = (M - i)/(M + i), M = (1/i)(s + 1)/(s - 1).
Complex livsic_from_weyl(const Extended& m);
Complex weyl_from_livsic(Complex s);

// S = (s - kappa)/(conj(kappa) s - 1). Involutive for fixed kappa.
Complex char_from_livsic(Complex s, VonNeumannParam kappa);
Complex char_from_weyl(Complex m, VonNeumannParam kappa);

// M(z) = int (1/(lambda - z) - lambda/(1 + lambda^2)) dmu.
Complex herglotz_eval(const HerglotzMeasure& mu, HalfPlanePoint z);

// Finite-mass resolvent int dmu/(lambda - z).
Complex stieltjes_eval(const HerglotzMeasure& mu, HalfPlanePoint z);

// S = (1 + itM)/(1 - itM) with M the Stieltjes transform of mu.
Complex rank_one_char(const HerglotzMeasure& mu, double t, HalfPlanePoint z);

struct KreinValue {
    Complex p{};
    bool ill_conditioned = false;
    double condition = 1.0;
};

// p(z) = (M(z) + i(kappa + 1)/(kappa - 1))^{-1}.
KreinValue krein_correction(Complex m, VonNeumannParam kappa);

// Analytic contraction on the upper half-plane with its closed-form tag.
class CharFn {
public:
    enum class Kind { Constant, SingularInner, ProductForm, RankOne, Volterra, GenericProduct };

    static CharFn constant(Complex k);
    static CharFn singular_inner(double ell);
    static CharFn product_form(double k, double ell, Complex phase);
    static CharFn rank_one(HerglotzMeasure mu, double t);
    static CharFn volterra(double ell);
    static CharFn product(std::vector<CharFn> factors);
    // Escape hatch for transformed functions (rescaling, reflections).
    static CharFn custom(std::function<Complex(Complex)> fn, std::string label);

    Complex operator()(Complex z) const { return fn_(z); }
    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    double k() const { return k_; }
    double ell() const { return ell_; }
    double t() const { return t_; }
    const HerglotzMeasure* measure() const { return measure_.get(); }
    const std::vector<CharFn>& factors() const { return factors_; }

private:
    Kind kind_ = Kind::Constant;
    std::function<Complex(Complex)> fn_;
    std::string label_;
    double k_ = 0.0, ell_ = 0.0, t_ = 0.0;
    std::shared_ptr<const HerglotzMeasure> measure_;
    std::vector<CharFn> factors_;
};

// sup over the grid of |S1 - e^{i theta} S2|, theta fixed at the anchor (default 2i).
double projective_distance(const CharFn& s1, const CharFn& s2, const std::vector<Complex>& grid,
                           Complex anchor = Complex(0.0, 2.0));

}  // namespace mono
