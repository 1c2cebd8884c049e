#include "mono/halfline.hpp"

#include <algorithm>
#include <cmath>

#include "mono/quadrature.hpp"

namespace mono {

namespace {

struct FilonWeights {
    double a, b, g;
};

FilonWeights filon(double th) {
    if (std::abs(th) < 1e-2) {
        const double t2 = th * th, t3 = t2 * th;
        return {2.0 * t3 / 45.0 - 2.0 * t3 * t2 / 315.0 + 2.0 * t3 * t2 * t2 / 4725.0,
                2.0 / 3.0 + 2.0 * t2 / 15.0 - 4.0 * t2 * t2 / 105.0 + 2.0 * t2 * t2 * t2 / 567.0,
                4.0 / 3.0 - 2.0 * t2 / 15.0 + t2 * t2 / 210.0 - t2 * t2 * t2 / 11340.0};
    }
    const double s = std::sin(th), c = std::cos(th), t3 = th * th * th;
    return {(th * th + th * s * c - 2.0 * s * s) / t3, 2.0 * (th * (1.0 + c * c) - 2.0 * s * c) / t3,
            4.0 * (s - th * c) / t3};
}

// Integral of the momentum density over [a, b] on geometric panels.
double integrate_k(const std::function<double(double)>& rho, double a, double b, double eps) {
    double total = 0.0;
    double lo = a;
    while (lo < b) {
        const double hi = std::min(b, lo < 1.0 ? 1.0 : 2.0 * lo);
        quad::Options opt;
        opt.abs_tol = eps;
        opt.rel_tol = 1e-12;
        opt.initial_panels = 4;
        bool ok = true;
        total += quad::adaptive_real(rho, lo, hi, opt, &ok);
        if (!ok) throw ToleranceError("momentum-density quadrature did not converge");
        lo = hi;
    }
    return total;
}

// Power-law remainder int_K^inf rho, with the exponent read off rho(K/2)/rho(K).
double power_tail(const std::function<double(double)>& rho, double K) {
    const double r1 = rho(K), r2 = rho(0.5 * K);
    if (!(r1 > 0.0) || !(r2 > r1)) return 0.0;
    const double p = std::log2(r2 / r1);
    if (!(p > 1.0)) throw ToleranceError("momentum density decays too slowly for a finite tail");
    return r1 * K / (p - 1.0);
}

}  // namespace

HalfLineState HalfLineState::from_function(const std::function<Complex(double)>& phi, double h, double x_max,
                                           bool normalize) {
    if (!(h > 0.0) || !(x_max > 4.0 * h)) throw InvalidInput("half-line grid needs h > 0 and x_max > 4h");
    long n = static_cast<long>(std::ceil(x_max / h));
    if (n % 2) ++n;
    Eigen::VectorXcd s(n);
    for (long j = 0; j < n; ++j) s[j] = phi(h * static_cast<double>(j + 1));
    return from_samples(std::move(s), h, normalize);
}

HalfLineState HalfLineState::from_samples(Eigen::VectorXcd samples, double h, bool normalize) {
    if (samples.size() < 4) throw InvalidInput("half-line state needs at least four samples");
    HalfLineState st;
    st.h_ = h;
    if (samples.size() % 2) {
        // Simpson needs an even panel count; the far tail is negligible by assumption.
        samples.conservativeResize(samples.size() + 1);
        samples[samples.size() - 1] = 0.0;
    }
    st.samples_ = std::move(samples);
    st.refresh_boundary();
    if (normalize) {
        const double n = st.norm();
        if (!(n > 0.0)) throw InvalidInput("cannot normalize the zero state");
        st.samples_ /= n;
        st.refresh_boundary();
    }
    return st;
}

void HalfLineState::refresh_boundary() {
    const auto& f = samples_;
    phi0_ = 4.0 * f[0] - 6.0 * f[1] + 4.0 * f[2] - f[3];
    dphi0_ = (-13.0 / 3.0 * f[0] + 19.0 / 2.0 * f[1] - 7.0 * f[2] + 11.0 / 6.0 * f[3]) / h_;
}

double HalfLineState::norm() const {
    const long n = samples_.size();
    double s = std::norm(phi0_) + std::norm(samples_[n - 1]);
    for (long j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * std::norm(samples_[j - 1]);
    return std::sqrt(s * h_ / 3.0);
}

Complex HalfLineState::integrate_against(const std::function<double(double)>& g) const {
    const long n = samples_.size();
    Complex s = phi0_ * g(0.0) + samples_[n - 1] * g(h_ * static_cast<double>(n));
    for (long j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * samples_[j - 1] * g(h_ * static_cast<double>(j));
    return s * h_ / 3.0;
}

std::pair<Complex, Complex> HalfLineState::cos_sin(double k) const {
    const long n = samples_.size();  // nodes 0..n, n even
    const FilonWeights w = filon(k * h_);
    const Complex step = std::exp(I * (k * h_));
    Complex cs_even{}, cs_odd{}, sn_even{}, sn_odd{};
    Complex rot{1.0, 0.0};
    auto value = [&](long j) { return j == 0 ? phi0_ : samples_[j - 1]; };
    for (long j = 0; j <= n; ++j) {
        if (j % 512 == 0) rot = std::exp(I * (k * h_ * static_cast<double>(j)));
        const Complex f = value(j);
        const double c = rot.real(), s = rot.imag();
        double wt = 1.0;
        if (j == 0 || j == n) wt = 0.5;
        if (j % 2 == 0) {
            cs_even += wt * f * c;
            sn_even += wt * f * s;
        } else {
            cs_odd += f * c;
            sn_odd += f * s;
        }
        rot *= step;
    }
    const double xn = h_ * static_cast<double>(n);
    const Complex fn = value(n), f0 = value(0);
    const Complex ic = h_ * (w.a * (fn * std::sin(k * xn)) + w.b * cs_even + w.g * cs_odd);
    const Complex is = h_ * (w.a * (f0 - fn * std::cos(k * xn)) + w.b * sn_even + w.g * sn_odd);
    return {ic, is};
}

Complex HalfLineState::fourier(double k) const {
    const auto [c, s] = cos_sin(k);
    return c + I * s;
}

Complex sine_transform(const HalfLineState& phi, double k) {
    if (!(k > 0.0)) throw InvalidInput("sine_transform needs k > 0");
    return std::sqrt(2.0 / pi) * phi.cos_sin(k).second;
}

Complex mixed_transform(const HalfLineState& phi, double gamma, double k) {
    if (!(k > 0.0)) throw InvalidInput("mixed_transform needs k > 0");
    const auto [cosine, sine] = phi.cos_sin(k);
    return std::sqrt(2.0 / pi) * (k * cosine - gamma * sine) / std::sqrt(k * k + gamma * gamma);
}

double SpectralDistribution::N(double lambda) const {
    double n = 0.0;
    if (has_bound_state && lambda >= bound_energy) n += bound_weight;
    if (lambda > 0.0) n += integrate_k(density_k, 0.0, std::sqrt(lambda), eps);
    return n;
}

double SpectralDistribution::upper_tail(double lambda) const {
    if (!(lambda > 0.0)) throw InvalidInput("upper_tail needs lambda > 0");
    const double k0 = std::sqrt(lambda);
    const double K = std::max(1000.0, 40.0 * k0);
    return integrate_k(density_k, k0, K, eps * 1e-3) + power_tail(density_k, K);
}

double SpectralDistribution::lower_tail(double lambda) const {
    if (!(lambda > 0.0)) throw InvalidInput("lower_tail needs lambda > 0");
    return (has_bound_state && -lambda >= bound_energy) ? bound_weight : 0.0;
}

double SpectralDistribution::continuous_mass() const {
    const double K = 1000.0;
    return integrate_k(density_k, 0.0, K, eps) + power_tail(density_k, K);
}

Complex SpectralDistribution::amplitude(double s) const {
    if (s < 0.0) return std::conj(amplitude(-s));
    Complex a = has_bound_state ? bound_weight * std::exp(I * s * bound_energy) : Complex{};
    if (s == 0.0) return a + continuous_mass();
    const double K = std::max(30.0, 20.0 / std::sqrt(s));
    quad::Options opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-12;
    opt.initial_panels = static_cast<int>(std::clamp(s * K * K / 2.0, 32.0, 20000.0));
    opt.max_intervals = opt.initial_panels + 200000;
    const auto rho = density_k;
    auto body = quad::adaptive([&](double k) { return rho(k) * std::exp(I * s * k * k); }, 0.0, K, opt);
    if (!body.converged) throw ToleranceError("survival amplitude quadrature did not converge");
    a += body.value;
    // Tail model A k^-p + B k^-(p+2), integrated along k^2 = K^2 + i w / s.
    const double r1 = rho(K), r2 = rho(0.5 * K);
    if (r1 > 0.0 && r2 > r1) {
        const double p = std::round(std::log2(r2 / r1));
        const double u = std::pow(K, -p);
        const double q1 = r1 / u, q2 = r2 / (u * std::pow(2.0, p));
        const double b = (q2 - q1) / 3.0 * K * K;
        const double A = q1 - b / (K * K);
        quad::Options topt;
        topt.abs_tol = 1e-13;
        topt.initial_panels = 8;
        auto tail = quad::adaptive(
            [&](double w) {
                const Complex k = std::sqrt(Complex(K * K, w / s));
                return std::exp(-w) * 0.5 * I * (A * std::pow(k, -p - 1.0) + b * std::pow(k, -p - 3.0));
            },
            0.0, 60.0, topt);
        a += std::exp(I * s * K * K) / s * tail.value;
    }
    return a;
}

SpectralDistribution spectral_distribution(const HalfLineState& phi, BoundaryCondition bc) {
    SpectralDistribution d;
    d.bc = bc;
    if (bc.kind == BoundaryKind::Dirichlet) {
        d.density_k = [phi](double k) { return k > 0.0 ? std::norm(sine_transform(phi, k)) : 0.0; };
        return d;
    }
    const double g = bc.gamma;
    d.density_k = [phi, g](double k) { return k > 0.0 ? std::norm(mixed_transform(phi, g, k)) : 0.0; };
    if (g > 0.0) {
        // f' + g f = 0 admits sqrt(2g) e^{-g x} at energy -g^2.
        d.has_bound_state = true;
        d.bound_energy = -g * g;
        const Complex ov = phi.integrate_against([g](double x) { return std::sqrt(2.0 * g) * std::exp(-g * x); });
        d.bound_weight = std::norm(ov);
    }
    return d;
}

SpectralDistribution distribution_from_density(std::function<double(double)> density_k, BoundaryCondition bc) {
    SpectralDistribution d;
    d.bc = bc;
    d.density_k = std::move(density_k);
    return d;
}

TailConstants tail_constants(const SpectralDistribution& dist, double alpha, const std::vector<double>& ladder) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidInput("tail_constants: alpha must lie in (0, 2]");
    if (ladder.size() < 2) throw InvalidInput("tail_constants: ladder needs at least two points");
    TailConstants tc;
    tc.ladder = ladder;
    auto fit = [&](const std::vector<double>& y, double& c, double& resid) {
        const long m = static_cast<long>(y.size());
        Eigen::MatrixXd A(m, 2);
        Eigen::VectorXd b(m);
        for (long i = 0; i < m; ++i) {
            A(i, 0) = 1.0;
            A(i, 1) = 1.0 / ladder[i];
            b[i] = y[i];
        }
        const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
        c = x[0];
        const double scale = std::max(std::abs(c), 1e-300);
        resid = (A * x - b).cwiseAbs().maxCoeff() / scale;
        if (b.cwiseAbs().maxCoeff() < 1e-12) c = 0.0, resid = 0.0;
    };
    std::vector<double> lower;
    for (double l : ladder) {
        tc.upper_scaled.push_back(std::pow(l, alpha) * dist.upper_tail(l));
        lower.push_back(std::pow(l, alpha) * dist.lower_tail(l));
    }
    double r1 = 0.0, r2 = 0.0;
    fit(tc.upper_scaled, tc.c1, r1);
    fit(lower, tc.c2, r2);
    tc.residual = std::max(r1, r2);
    tc.inconclusive = tc.residual > 0.05 || tc.c1 < 0.0 || tc.c2 < 0.0;
    return tc;
}

StableSigma stable_sigma(BoundaryCondition bc, const HalfLineState& phi, double degenerate_tol) {
    StableSigma out;
    if (bc.kind == BoundaryKind::Dirichlet) {
        const double b = std::norm(phi.value0());
        out.alpha = 0.5;
        out.sigma = std::sqrt(2.0 / pi) * b;
        out.degenerate = b < degenerate_tol;
        return out;
    }
    const double b = std::norm(phi.derivative0() + bc.gamma * phi.value0());
    out.alpha = 1.5;
    out.sigma = 2.0 / 3.0 * std::sqrt(2.0 / pi) * b;
    out.degenerate = b < degenerate_tol;
    return out;
}

}  // namespace mono
