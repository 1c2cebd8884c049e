#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "mono/core.hpp"

namespace mono {

enum class BoundaryKind { Dirichlet, Mixed };

// Mixed means f'(0) + gamma f(0) = 0.
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double gamma = 0.0;
    static BoundaryCondition dirichlet() { return {BoundaryKind::Dirichlet, 0.0}; }
    static BoundaryCondition mixed(double g) { return {BoundaryKind::Mixed, g}; }
};

// Samples at x_j = j h, j = 1..N; phi(0), phi'(0) by one-sided cubic extrapolation.
class HalfLineState {
public:
    static HalfLineState from_function(const std::function<Complex(double)>& phi, double h, double x_max,
                                       bool normalize = true);
    static HalfLineState from_samples(Eigen::VectorXcd samples, double h, bool normalize = true);

    double h() const { return h_; }
    double x_max() const { return h_ * static_cast<double>(samples_.size()); }
    const Eigen::VectorXcd& samples() const { return samples_; }
    Complex value0() const { return phi0_; }
    Complex derivative0() const { return dphi0_; }
    double norm() const;

    // int_0^X phi(x) e^{ikx} dx by Filon-Simpson panels.
    Complex fourier(double k) const;
    // (int phi cos kx, int phi sin kx), one Filon pass.
    std::pair<Complex, Complex> cos_sin(double k) const;
    // int_0^X phi(x) g(x) dx by Simpson, g real.
    Complex integrate_against(const std::function<double(double)>& g) const;

private:
    void refresh_boundary();
    double h_ = 1e-3;
    Eigen::VectorXcd samples_;
    Complex phi0_{}, dphi0_{};
};

// sqrt(2/pi) int phi(x) sin(kx) dx.
Complex sine_transform(const HalfLineState& phi, double k);
// sqrt(2/pi) int phi(x) (k cos kx - gamma sin kx)/sqrt(k^2 + gamma^2) dx.
Complex mixed_transform(const HalfLineState& phi, double gamma, double k);

struct SpectralDistribution {
    BoundaryCondition bc;
    bool has_bound_state = false;
    double bound_energy = 0.0;
    double bound_weight = 0.0;
    // Continuous part in the momentum variable: dN = density_k(k) dk with lambda = k^2.
    std::function<double(double)> density_k;
    double eps = 1e-12;

    double N(double lambda) const;
    double upper_tail(double lambda) const;  // 1 - N(lambda), lambda > 0
    double lower_tail(double lambda) const;  // N(-lambda), lambda > 0
    double continuous_mass() const;
    // int e^{i s lambda} dN(lambda).
    Complex amplitude(double s) const;
};

SpectralDistribution spectral_distribution(const HalfLineState& phi, BoundaryCondition bc);

// Distribution with a given momentum density (closed-form oracles, custom laws).
SpectralDistribution distribution_from_density(std::function<double(double)> density_k, BoundaryCondition bc = {});

struct TailConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double residual = 0.0;
    bool inconclusive = false;
    std::vector<double> ladder;
    std::vector<double> upper_scaled;  // lambda^alpha (1 - N(lambda))
};

TailConstants tail_constants(const SpectralDistribution& dist, double alpha,
                             const std::vector<double>& ladder = {1e2, 1e3, 1e4});

struct StableSigma {
    double alpha = 0.0;
    double sigma = 0.0;
    bool degenerate = false;
};

StableSigma stable_sigma(BoundaryCondition bc, const HalfLineState& phi, double degenerate_tol = 1e-8);

}  // namespace mono
