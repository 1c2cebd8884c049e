#pragma once

#include <functional>
#include <random>
#include <vector>

#include "mono/core.hpp"

namespace mono {

struct StableLawParams {
    double alpha = 2.0;
    double beta = 0.0;
    double gamma = 0.0;
    double sigma = 1.0;
    void validate() const;
};

// exp(sigma (i t gamma - |t|^alpha (1 - i beta sgn(t) omega(t, alpha)))).
Complex stable_cf(const StableLawParams& p, double t);

// Gamma(1 - alpha) cos(pi alpha / 2); pi/2 at alpha = 1; +inf at alpha = 2.
double d_alpha(double alpha);

StableLawParams params_from_tails(double c1, double c2, double alpha);
// Gaussian endpoint: sigma = variance / 2.
StableLawParams gaussian_params(double variance);

struct LevyHalf {
    double cdf = 0.0;
    double pdf = 0.0;
};

// One-sided 1/2-stable law whose characteristic function is exp(-sigma|t|^{1/2}(1 - i sgn t)).
LevyHalf levy_half(double sigma, double lambda);

struct AttractionRow {
    double n = 0.0;
    double max_rel_deviation = 0.0;
};

struct AttractionReport {
    StableLawParams law;
    std::vector<AttractionRow> rows;
    bool converging = true;
};

// Compares |f(t / n^{1/alpha})|^n with exp(-sigma |t|^alpha) over the t grid.
AttractionReport attraction_check(const std::function<Complex(double)>& cf, double alpha, double sigma,
                                  const std::vector<double>& n_ladder, const std::vector<double>& t_grid);

// Chambers-Mallows-Stuck draw in the (alpha, beta, gamma, sigma) convention above.
double sample_stable(const StableLawParams& p, std::mt19937_64& rng);

}  // namespace mono
