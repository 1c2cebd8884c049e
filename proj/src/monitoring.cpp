#include "mono/monitoring.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace mono {

const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::RingUnitary: return "ring_unitary";
        case ScenarioKind::RingDissipative: return "ring_dissipative";
        case ScenarioKind::Line: return "line";
        case ScenarioKind::GraphTheta: return "graph_theta";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    for (auto k : {ScenarioKind::RingUnitary, ScenarioKind::RingDissipative, ScenarioKind::Line, ScenarioKind::GraphTheta})
        if (s == to_string(k)) return k;
    throw InvalidInput(fmt::format("unknown scenario '{}'", s));
}

const char* to_string(ZenoKind k) {
    switch (k) {
        case ZenoKind::Zeno: return "zeno";
        case ZenoKind::AntiZeno: return "anti_zeno";
        case ZenoKind::Resonant: return "resonant";
        case ZenoKind::Unknown: return "unknown";
    }
    return "?";
}

double ScenarioSpec::ell() const {
    if (kind != ScenarioKind::RingUnitary && kind != ScenarioKind::RingDissipative)
        throw InvalidInput("ell() is defined for ring scenarios only");
    if (state.edges.size() != 1) throw InvalidInput("ring scenario needs a single-edge state");
    return static_cast<double>(state.edges[0].f.size()) * state.grid.dx;
}

Graph scenario_graph(const ScenarioSpec& sc) {
    const GridParams& grid = sc.state.grid;
    switch (sc.kind) {
        case ScenarioKind::RingUnitary: return ring_graph(sc.ell(), std::exp(-I * sc.flux), grid);
        case ScenarioKind::RingDissipative:
            if (!(std::abs(sc.kappa) < 1.0)) throw InvalidInput("dissipative ring needs |kappa| < 1");
            return ring_graph(sc.ell(), sc.kappa, grid);
        case ScenarioKind::Line: return line_graph(grid);
        case ScenarioKind::GraphTheta: return generator_graph(sc.graph, grid);
    }
    throw InvalidInput("unknown scenario");
}

double snap_time(const ScenarioSpec& sc, double t) {
    if (sc.evolve.allow_interpolation) return t;
    const double unit = sc.state.grid.dx / sc.state.grid.c;
    const double m = std::round(t / unit);
    if (m == 0.0) throw InvalidInput(fmt::format("time step {} is below one cell ({})", t, unit));
    return m * unit;
}

namespace {

void check_normalized(const GraphState& s) {
    if (std::abs(s.norm2() - 1.0) > 1e-12) throw InvalidInput("scenario state must be normalized");
}

bool is_semigroup(const ScenarioSpec& sc) { return sc.kind == ScenarioKind::RingDissipative; }

double jump_sum(const ScenarioSpec& sc) {
    double s = 0.0;
    for (const auto& j : sc.jumps) {
        const EdgeSamples& e = sc.state.edge(j.edge);
        s += std::norm(right_limit(e, j.x, sc.state.grid.dx) - left_limit(e, j.x, sc.state.grid.dx));
    }
    return s;
}

double power(double p, long n) { return p > 0.0 ? std::exp(static_cast<double>(n) * std::log(p)) : 0.0; }

}  // namespace

Complex survival_amplitude(const ScenarioSpec& sc, double t) {
    check_normalized(sc.state);
    if (is_semigroup(sc) && t < 0.0) throw InvalidInput("semigroup scenarios need t >= 0");
    const Graph g = scenario_graph(sc);
    return inner_product(transport(g, sc.state, t, sc.evolve), sc.state);
}

double monitored_survival(const ScenarioSpec& sc, double t, long n) {
    if (n < 1) throw InvalidInput("monitored_survival needs n >= 1");
    const double s = snap_time(sc, t / static_cast<double>(n));
    return power(std::norm(survival_amplitude(sc, s)), n);
}

std::vector<long> default_ladder() {
    std::vector<long> v;
    for (int p = 6; p <= 12; ++p) v.push_back(1L << p);
    return v;
}

MonitoringResult estimate_decay_rate(const ScenarioSpec& sc, double t, const std::vector<long>& ladder) {
    if (ladder.size() < 4) throw InvalidInput("decay-rate ladder needs at least four points");
    const double q = static_cast<double>(ladder[1]) / static_cast<double>(ladder[0]);
    for (size_t i = 1; i < ladder.size(); ++i) {
        const double r = static_cast<double>(ladder[i]) / static_cast<double>(ladder[i - 1]);
        if (!(q > 1.0) || std::abs(r - q) > 1e-12 * q) throw InvalidInput("decay-rate ladder must be geometric");
    }
    if (!(t > 0.0)) throw InvalidInput("decay-rate estimation needs t > 0");
    MonitoringResult res;
    res.t = t;
    for (long n : ladder) {
        MonitoringRow row;
        row.n = n;
        row.step = snap_time(sc, t / static_cast<double>(n));
        row.abs_amplitude = std::abs(survival_amplitude(sc, row.step));
        if (row.abs_amplitude == 0.0) {
            res.divergent = true;
            row.tau_hat = std::numeric_limits<double>::infinity();
        } else {
            row.tau_hat = -2.0 / row.step * std::log(row.abs_amplitude);
        }
        res.rows.push_back(row);
    }
    if (res.divergent) {
        res.tau_extrapolated = std::numeric_limits<double>::infinity();
        return res;
    }
    const long m = static_cast<long>(res.rows.size());
    Eigen::MatrixXd A(m, 3);
    Eigen::VectorXd b(m);
    for (long i = 0; i < m; ++i) {
        const double h = 1.0 / static_cast<double>(res.rows[i].n);
        A(i, 0) = 1.0;
        A(i, 1) = h;
        A(i, 2) = h * h;
        b[i] = res.rows[i].tau_hat;
    }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    res.tau_extrapolated = x[0];
    res.residual = std::sqrt((A * x - b).squaredNorm() / static_cast<double>(m));
    return res;
}

double predicted_tau(const ScenarioSpec& sc) {
    check_normalized(sc.state);
    const double c = sc.state.grid.c;
    const double jumps = jump_sum(sc);
    switch (sc.kind) {
        case ScenarioKind::RingUnitary: {
            const EdgeSamples& e = sc.state.edges[0];
            return c * (std::norm(std::exp(-I * sc.flux) * head_value(e) - tail_value(e)) + jumps);
        }
        case ScenarioKind::RingDissipative: {
            const EdgeSamples& e = sc.state.edges[0];
            const Complex a = tail_value(e), b = head_value(e);
            return c * (std::norm(a - sc.kappa * b) + (1.0 - std::norm(sc.kappa)) * std::norm(b) + jumps);
        }
        case ScenarioKind::Line: {
            const EdgeSamples& e = sc.state.edges.at(0);
            return c * (std::norm(tail_value(e)) + std::norm(head_value(e)) + jumps);
        }
        case ScenarioKind::GraphTheta: break;
    }
    const GraphSpec& g = sc.graph;
    if (g.theta.is_infinite()) throw InvalidInput("graph scenario needs a finite theta");
    const Complex theta = g.theta.value;
    switch (g.graph_case) {
        case GraphCase::IStar:
        case GraphCase::I: {
            const Complex in = head_value(sc.state.edge("left")), out = tail_value(sc.state.edge("right"));
            return c * (std::norm(theta * in + out) + jumps);
        }
        case GraphCase::II: {
            const EdgeSamples& e = sc.state.edge("interval");
            return c * (std::norm(theta * head_value(e) + tail_value(e)) + jumps);
        }
        case GraphCase::III: {
            const double k = g.k, kp = std::sqrt(1.0 - k * k);
            const Complex in = head_value(sc.state.edge("left")), out = tail_value(sc.state.edge("right"));
            const EdgeSamples& a = sc.state.edge("appendix");
            const Complex a0 = tail_value(a), al = head_value(a);
            const double mismatch = std::abs(in - (k * out + kp * a0));
            if (mismatch > 1e-5 * std::max(1.0, std::abs(in)))
                throw InvalidInput(fmt::format(
                    "state violates the vertex condition of the adjoint operator (mismatch {:.3g})", mismatch));
            return c * (std::norm(kp * out - k * a0 - theta * al) + jumps);
        }
    }
    throw InvalidInput("unknown graph case");
}

double vertex_mismatch_tau(const ScenarioSpec& sc) {
    check_normalized(sc.state);
    const Graph g = scenario_graph(sc);
    const GraphState& s = sc.state;
    double tau = 0.0;
    for (const Vertex& v : g.vertices) {
        Eigen::VectorXcd in(static_cast<long>(v.in.size())), out(static_cast<long>(v.out.size()));
        for (size_t i = 0; i < v.in.size(); ++i) in[static_cast<long>(i)] = head_value(s.edges[v.in[i]]);
        for (size_t i = 0; i < v.out.size(); ++i) out[static_cast<long>(i)] = tail_value(s.edges[v.out[i]]);
        const Eigen::VectorXcd min = v.coupling * in;
        tau += (out - min).squaredNorm() + in.squaredNorm() - min.squaredNorm();
    }
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].tail < 0) tau += std::norm(tail_value(s.edges[e]));
        if (g.edges[e].head < 0) tau += std::norm(head_value(s.edges[e]));
    }
    return s.grid.c * (tau + jump_sum(sc));
}

Classification classify_state(const ScenarioSpec& sc, double zeno_tol) {
    Classification out;
    try {
        out.tau = predicted_tau(sc);
    } catch (const InvalidInput& e) {
        out.tau = vertex_mismatch_tau(sc);
        out.diagnostics = fmt::format("closed formula unavailable ({}); used vertex conditions", e.what());
    }
    if (out.tau <= zeno_tol) {
        out.kind = ZenoKind::Zeno;
        out.tau = 0.0;
    } else {
        out.kind = ZenoKind::Resonant;
    }
    return out;
}

Classification classify_by_tails(const SpectralDistribution& dist, const std::vector<double>& ladder) {
    if (ladder.size() < 2) throw InvalidInput("tail ladder needs at least two points");
    Classification out;
    std::vector<double> g;
    for (double l : ladder) g.push_back(l * (dist.upper_tail(l) + dist.lower_tail(l)));
    const double gmax = *std::max_element(g.begin(), g.end());
    if (gmax < 1e-12) {
        out.kind = ZenoKind::Zeno;
        out.diagnostics = "tails vanish on the ladder";
        return out;
    }
    if (!(g.front() > 0.0) || !(g.back() > 0.0)) {
        out.diagnostics = "tail ladder has non-positive entries";
        return out;
    }
    const double slope = std::log(g.back() / g.front()) / std::log(ladder.back() / ladder.front());
    out.diagnostics = fmt::format("log-log slope of lambda * tail: {:.4f}", slope);
    if (slope > 0.2) {
        out.kind = ZenoKind::AntiZeno;
        return out;
    }
    if (slope < -0.2) {
        out.kind = ZenoKind::Zeno;
        return out;
    }
    const long m = static_cast<long>(g.size());
    Eigen::MatrixXd A(m, 2);
    Eigen::VectorXd b(m);
    for (long i = 0; i < m; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = 1.0 / ladder[i];
        b[i] = g[i];
    }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    const double resid = (A * x - b).cwiseAbs().maxCoeff() / std::abs(x[0]);
    if (resid > 0.05 || !(x[0] > 0.0)) {
        out.diagnostics += fmt::format("; ladder fit residual {:.3g}", resid);
        return out;
    }
    // lambda (1 - N(lambda) + N(-lambda)) -> 2 sigma / pi, and tau = 2 sigma.
    out.kind = ZenoKind::Resonant;
    out.tau = pi * x[0];
    return out;
}

bool anti_zeno_proxy(const std::function<Complex(double)>& amplitude, const std::vector<double>& times) {
    constexpr long n = 1L << 12;
    for (double t : times)
        if (!(power(std::norm(amplitude(t / static_cast<double>(n))), n) < 1e-6)) return false;
    return !times.empty();
}

std::function<double(double)> time_scale(TimeScale s) {
    switch (s) {
        case TimeScale::Linear: return [](double t) { return t; };
        case TimeScale::Sqrt: return [](double t) { return std::sqrt(t); };
        case TimeScale::Square: return [](double t) { return t * t; };
        case TimeScale::TwoThirds: return [](double t) { return std::cbrt(t * t); };
    }
    throw InvalidInput("unknown time scale");
}

namespace {
double scaled_step(const std::function<double(double)>& scale, double t, long n) {
    if (n < 1) throw InvalidInput("timescale_survival needs n >= 1");
    if (std::abs(scale(0.0)) > 0.0) throw InvalidInput("time scale must vanish at 0");
    const double s = scale(t / static_cast<double>(n));
    if (!(s > 0.0)) throw InvalidInput("time scale must be positive for t > 0");
    return s;
}
}  // namespace

double timescale_survival(const std::function<Complex(double)>& amplitude, const std::function<double(double)>& scale,
                          double t, long n) {
    return power(std::norm(amplitude(scaled_step(scale, t, n))), n);
}

double timescale_survival(const ScenarioSpec& sc, const std::function<double(double)>& scale, double t, long n) {
    const double s = snap_time(sc, scaled_step(scale, t, n));
    return power(std::norm(survival_amplitude(sc, s)), n);
}

void write_monitoring_csv(std::ostream& os, const MonitoringResult& r, const std::string& anchor) {
    os << "# anchor: " << anchor << "\n";
    os << fmt::format("# t: {:.17g}\n# tau_extrapolated: {:.17g}\n# residual: {:.6g}\n", r.t, r.tau_extrapolated,
                      r.residual);
    os << "n,t_over_n_snapped,abs_amplitude,tau_hat\n";
    for (const auto& row : r.rows)
        os << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", row.n, row.step, row.abs_amplitude, row.tau_hat);
}

}  // namespace mono
