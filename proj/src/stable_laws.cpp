#include "mono/stable_laws.hpp"

#include <cmath>
#include <limits>

namespace mono {

void StableLawParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidInput("stable alpha must lie in (0, 2]");
    if (!(beta >= -1.0 && beta <= 1.0)) throw InvalidInput("stable beta must lie in [-1, 1]");
    if (!(sigma > 0.0)) throw InvalidInput("stable sigma must be positive");
}

Complex stable_cf(const StableLawParams& p, double t) {
    if (t == 0.0) return 1.0;
    const double at = std::abs(t);
    const double sg = t > 0 ? 1.0 : -1.0;
    double omega = 0.0;
    if (p.alpha == 2.0)
        omega = 0.0;
    else if (p.alpha == 1.0)
        omega = -2.0 / pi * std::log(at);
    else
        omega = std::tan(0.5 * pi * p.alpha);
    const double mod = std::pow(at, p.alpha);
    const Complex expo = p.sigma * (I * t * p.gamma - mod * (1.0 - I * p.beta * sg * omega));
    return std::exp(expo);
}

double d_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidInput("d_alpha: alpha must lie in (0, 2]");
    if (alpha == 1.0) return 0.5 * pi;
    if (alpha == 2.0) return std::numeric_limits<double>::infinity();
    return std::tgamma(1.0 - alpha) * std::cos(0.5 * pi * alpha);
}

StableLawParams params_from_tails(double c1, double c2, double alpha) {
    if (!(c1 >= 0.0 && c2 >= 0.0)) throw InvalidInput("tail constants must be nonnegative");
    if (!(c1 + c2 > 0.0)) throw InvalidInput("tail constants must not both vanish");
    if (alpha == 2.0) throw InvalidInput("alpha = 2 has no tail parameterization; use gaussian_params");
    StableLawParams p;
    p.alpha = alpha;
    p.sigma = (c1 + c2) * d_alpha(alpha);
    p.beta = (c1 - c2) / (c1 + c2);
    p.gamma = 0.0;
    p.validate();
    return p;
}

StableLawParams gaussian_params(double variance) {
    if (!(variance > 0.0)) throw InvalidInput("variance must be positive");
    return {2.0, 0.0, 0.0, 0.5 * variance};
}

LevyHalf levy_half(double sigma, double lambda) {
    if (!(lambda > 0.0)) throw InvalidInput("levy_half: lambda must be positive");
    if (!(sigma > 0.0)) throw InvalidInput("levy_half: sigma must be positive");
    LevyHalf out;
    // 2[1 - N(sigma/sqrt(lambda))] with N the standard normal CDF.
    out.cdf = std::erfc(sigma / std::sqrt(2.0 * lambda));
    out.pdf = sigma / std::sqrt(2.0 * pi) * std::pow(lambda, -1.5) * std::exp(-sigma * sigma / (2.0 * lambda));
    return out;
}

AttractionReport attraction_check(const std::function<Complex(double)>& cf, double alpha, double sigma,
                                  const std::vector<double>& n_ladder, const std::vector<double>& t_grid) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidInput("attraction_check: alpha must lie in (0, 2]");
    AttractionReport rep;
    rep.law = {alpha, 0.0, 0.0, sigma};
    for (double n : n_ladder) {
        const double bn = std::pow(n, 1.0 / alpha);
        double worst = 0.0;
        for (double t : t_grid) {
            const double target = std::exp(-sigma * std::pow(std::abs(t), alpha));
            const double got = std::exp(n * std::log(std::abs(cf(t / bn))));
            worst = std::max(worst, std::abs(got - target) / target);
        }
        rep.rows.push_back({n, worst});
    }
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].max_rel_deviation > 1.5 * rep.rows[i - 1].max_rel_deviation + 1e-12) rep.converging = false;
    return rep;
}

double sample_stable(const StableLawParams& p, std::mt19937_64& rng) {
    p.validate();
    std::uniform_real_distribution<double> uni(-0.5 * pi, 0.5 * pi);
    std::exponential_distribution<double> expo(1.0);
    const double u = uni(rng);
    const double w = expo(rng);
    const double a = p.alpha, b = p.beta;
    // Scale parameter of the standard parameterization.
    const double c = std::pow(p.sigma, 1.0 / a);
    double x = 0.0;
    if (a == 1.0) {
        const double h = 0.5 * pi + b * u;
        x = (2.0 / pi) * (h * std::tan(u) - b * std::log((0.5 * pi * w * std::cos(u)) / h));
        x = c * x + (2.0 / pi) * b * c * std::log(c);
    } else {
        const double zeta = -b * std::tan(0.5 * pi * a);
        const double xi = std::atan(-zeta) / a;
        const double lead = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * a));
        x = lead * std::sin(a * (u + xi)) / std::pow(std::cos(u), 1.0 / a) *
            std::pow(std::cos(u - a * (u + xi)) / w, (1.0 - a) / a);
        x *= c;
    }
    return x + p.sigma * p.gamma;
}

}  // namespace mono
