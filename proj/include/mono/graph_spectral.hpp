#pragma once

#include <utility>
#include <vector>

#include "mono/core.hpp"
#include "mono/herglotz.hpp"

namespace mono {

enum class GraphCase { IStar, I, II, III };

const char* to_string(GraphCase c);
GraphCase graph_case_from_string(const std::string& s);

struct GraphSpec {
    GraphCase graph_case = GraphCase::I;
    double mu = 0.0;
    double nu = 1.0;
    double k = 0.0;
    Extended theta{1.0};

    double ell() const { return nu - mu; }
    // arg(theta); only meaningful for unimodular theta.
    double flux() const { return std::arg(theta.value); }
    void validate() const;
    // Case I* and Case I with k = 0: the characteristic function vanishes identically.
    bool exceptional() const;
};

struct TripleParams {
    double k = 0.0;
    double ell = 0.0;
    double ell_prime = 0.0;
    Complex theta{1.0};
    Complex e2ialpha{1.0};
};

TripleParams triple_params(const GraphSpec& spec);

// A(phi) = cos^2(phi/2) coth(L/2) + sin^2(phi/2) tanh(L/2).
double amplitude_A(double phi, double L);

// tan(w) without overflow for large |Im w|.
Complex stable_tan(Complex w);

Complex livsic_closed(const GraphSpec& spec, Complex z);
Complex weyl_closed(const GraphSpec& spec, Complex z);
Complex char_closed(const GraphSpec& spec, Complex z);
HerglotzMeasure spectral_measure(const GraphSpec& spec);

// Case I and Case II specs whose characteristic functions multiply to the given Case III one.
std::pair<GraphSpec, GraphSpec> case_iii_factors(const GraphSpec& spec);

Complex transmission(double k, double ell, Complex theta, double lambda);
Complex char_interval(double k, double ell, Complex theta, Complex z);
Complex interval_kappa(double k, double ell, Complex theta);
// Zeros of char_interval for n in [n_min, n_max].
std::vector<Complex> interval_zeros(double k, double ell, Complex theta, int n_min, int n_max);

enum class MapDirection { KappaToTheta, ThetaToKappa };
Extended theta_kappa_map(const GraphSpec& spec, MapDirection dir, const Extended& value);

// log|S(z)|; -inf at zeros of S.
double log_potential(const GraphSpec& spec, Complex z);

}  // namespace mono
