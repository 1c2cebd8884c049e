#pragma once

#include <vector>

#include "mono/herglotz.hpp"

namespace mono {

inline constexpr Complex projective_anchor{0.0, 2.0};

// Pointwise product of characteristic functions.
CharFn couple(const CharFn& s1, const CharFn& s2);

// z -> S((z - b)/a), the triple under f(z) = a z + b.
CharFn rescale(const CharFn& s, double a, double b);

// z -> conj(S(-conj z)), the characteristic function of -A*.
CharFn reflect(const CharFn& s);

struct NfoldValue {
    Complex raw{};         // S(z/n + mu)^n
    Complex normalized{};  // raw with its phase at the anchor removed
};

NfoldValue nfold_limit(const CharFn& s, double mu, long n, Complex z);

struct BoundaryData {
    double modulus = 0.0;  // |S(mu + i0)|
    double ell = 0.0;      // (1/i) d/dlambda log S at mu, when the modulus is 1
    bool inner = false;
};

// Boundary modulus and log-phase derivative at a real point, by approach from above.
BoundaryData boundary_data(const CharFn& s, double mu, double height = 1e-7);

// S(nz)^n for a rank-one characteristic function.
Complex volterra_limit(const CharFn& s, long n, Complex z);

// (1/(it)) (S_n - 1)/(S_n + 1) with S_n = S(nz)^n.
Complex coupling_weyl_limit(const CharFn& s, long n, Complex z);

// The limit -(2/l) tan(l/(2z)) with l = 2t.
Complex volterra_weyl(double ell, Complex z);

struct Atom {
    double position = 0.0;
    double weight = 0.0;
};

// k-th atom of the limit spectral measure: position l/((2k+1)pi), weight (4/pi^2)/(2k+1)^2.
Atom volterra_atom(double ell, long k);

// Direct summation of the limit atoms' Stieltjes transform over |k| <= n_terms plus a tail estimate.
Complex volterra_atoms_stieltjes(double ell, Complex z, long n_terms = 200000);

}  // namespace mono
