#include "mono/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

namespace mono::quad {

namespace {

// Kronrod 15-point abscissae; odd indices are the embedded Gauss 7-point nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    Complex value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ComplexFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex fc = f(c);
    Complex kron = fc * wgk[7];
    Complex gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        Complex s = f(c - dx) + f(c + dx);
        kron += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kron *= h;
    gauss *= h;
    double err = std::abs(kron - gauss);
    // QUADPACK-style rescaling makes the estimate honest on smooth panels.
    if (err > 0) err = std::min(err, 200.0 * err * std::sqrt(200.0 * err / (std::abs(kron) + 1e-300)));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron));
    return {a, b, kron, err};
}

}  // namespace

Result adaptive(const ComplexFn& f, double a, double b, const Options& opt) {
    Result res;
    if (a == b) return res;
    std::priority_queue<Panel> heap;
    const int n0 = std::max(1, opt.initial_panels);
    Complex total{};
    double err = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double lo = a + (b - a) * i / n0;
        const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
        Panel p = gk15(f, lo, hi);
        total += p.value;
        err += p.error;
        heap.push(p);
    }
    res.evaluations = 15 * n0;
    int intervals = n0;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (intervals >= opt.max_intervals) {
            res.converged = false;
            break;
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            res.converged = false;
            heap.push(worst);
            break;
        }
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        res.evaluations += 30;
        ++intervals;
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
    // Re-sum to shed the drift of the running updates.
    Complex sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    res.value = sum;
    res.error = esum;
    return res;
}

double adaptive_real(const std::function<double(double)>& f, double a, double b,
                     const Options& opt, bool* converged) {
    Result r = adaptive([&](double x) { return Complex(f(x), 0.0); }, a, b, opt);
    if (converged) *converged = r.converged;
    return r.value.real();
}

const Rule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

Complex composite_gl(const ComplexFn& f, double a, double b, int panels, int order) {
    const Rule& r = gauss_legendre(order);
    const double w = (b - a) / panels;
    Complex total{};
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * w;
        Complex s{};
        for (int i = 0; i < order; ++i) s += r.weights[i] * f(c + 0.5 * w * r.nodes[i]);
        total += 0.5 * w * s;
    }
    return total;
}

}  // namespace mono::quad
