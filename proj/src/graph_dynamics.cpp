#include "mono/graph_dynamics.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <ostream>

namespace mono {

namespace {

long cells_for(double length, double dx) {
    const double r = length / dx;
    const long n = std::llround(r);
    if (n <= 0 || std::abs(r - static_cast<double>(n)) > 1e-9 * std::max(1.0, r))
        throw InvalidInput(fmt::format("edge length {} is not a positive multiple of dx = {}", length, dx));
    return n;
}

void check_layout(const Graph& g, const GraphState& s) {
    if (s.edges.size() != g.edges.size()) throw InvalidInput("state does not match the graph layout");
    if (s.grid.dx != g.grid.dx) throw InvalidInput("state grid step differs from the graph");
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (s.edges[i].f.size() != g.edges[i].cells || s.edges[i].name != g.edges[i].name)
            throw InvalidInput("state edge '" + s.edges[i].name + "' does not match the graph layout");
}

// Shift every edge by m cells, m no longer than the shortest edge.
void step(const Graph& g, std::vector<Eigen::VectorXcd>& f, long m) {
    const size_t ne = g.edges.size();
    std::vector<Eigen::VectorXcd> inflow(ne);
    for (const Vertex& v : g.vertices) {
        for (size_t oi = 0; oi < v.out.size(); ++oi) {
            Eigen::VectorXcd buf(m);
            for (long j = 0; j < m; ++j) {
                const long lag = m - j;
                Complex acc{};
                for (size_t ii = 0; ii < v.in.size(); ++ii) {
                    const auto& src = f[v.in[ii]];
                    acc += v.coupling(oi, ii) * src[src.size() - lag];
                }
                buf[j] = acc;
            }
            inflow[v.out[oi]] = std::move(buf);
        }
    }
    for (size_t e = 0; e < ne; ++e) {
        auto& a = f[e];
        const long n = a.size();
        if (g.edges[e].head == kWindow) {
            for (long j = n - m; j < n; ++j)
                if (a[j] != Complex{})
                    throw TruncationError("mass reached the truncation window on edge '" + g.edges[e].name + "'");
        }
        for (long j = n - 1; j >= m; --j) a[j] = a[j - m];
        if (g.edges[e].tail >= 0)
            a.head(m) = inflow[e];
        else
            a.head(m).setZero();
    }
}

std::vector<Eigen::VectorXcd> run(const Graph& g, std::vector<Eigen::VectorXcd> f, long m) {
    long chunk = std::numeric_limits<long>::max();
    for (const auto& e : g.edges) chunk = std::min(chunk, e.cells);
    while (m > 0) {
        const long d = std::min(chunk, m);
        step(g, f, d);
        m -= d;
    }
    return f;
}

GraphState shift(const Graph& g, const GraphState& s, long m, bool reverse) {
    const Graph& net = g;
    std::vector<Eigen::VectorXcd> f;
    f.reserve(s.edges.size());
    for (const auto& e : s.edges) f.push_back(reverse ? Eigen::VectorXcd(e.f.reverse()) : e.f);
    if (reverse) {
        Graph r = net.reversed();
        f = run(r, std::move(f), m);
    } else {
        f = run(net, std::move(f), m);
    }
    GraphState out = s;
    for (size_t i = 0; i < f.size(); ++i) out.edges[i].f = reverse ? Eigen::VectorXcd(f[i].reverse()) : f[i];
    return out;
}

}  // namespace

const EdgeSamples& GraphState::edge(const std::string& name) const {
    for (const auto& e : edges)
        if (e.name == name) return e;
    throw InvalidInput("no edge named '" + name + "'");
}

EdgeSamples& GraphState::edge(const std::string& name) {
    for (auto& e : edges)
        if (e.name == name) return e;
    throw InvalidInput("no edge named '" + name + "'");
}

double GraphState::norm2() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.f.squaredNorm();
    return grid.dx * s;
}

void GraphState::normalize() {
    const double n = std::sqrt(norm2());
    if (!(n > 0.0)) throw InvalidInput("cannot normalize the zero state");
    for (auto& e : edges) e.f /= n;
}

int Graph::add_edge(const std::string& name, double x0, double length, int tail, int head) {
    edges.push_back({name, x0, cells_for(length, grid.dx), tail, head});
    return static_cast<int>(edges.size()) - 1;
}

int Graph::add_vertex(std::vector<int> in, std::vector<int> out, Eigen::MatrixXcd coupling) {
    if (coupling.rows() != static_cast<long>(out.size()) || coupling.cols() != static_cast<long>(in.size()))
        throw InvalidInput("vertex coupling must be out x in");
    const int id = static_cast<int>(vertices.size());
    for (int e : in) edges.at(e).head = id;
    for (int e : out) edges.at(e).tail = id;
    vertices.push_back({std::move(in), std::move(out), std::move(coupling)});
    return id;
}

int Graph::edge_index(const std::string& name) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].name == name) return static_cast<int>(i);
    throw InvalidInput("no edge named '" + name + "'");
}

GraphState Graph::sample(const std::function<Complex(const std::string&, double)>& fn) const {
    GraphState s;
    s.grid = grid;
    for (const auto& e : edges) {
        EdgeSamples es{e.name, e.x0, Eigen::VectorXcd(e.cells)};
        for (long j = 0; j < e.cells; ++j) es.f[j] = fn(e.name, e.x0 + (static_cast<double>(j) + 0.5) * grid.dx);
        s.edges.push_back(std::move(es));
    }
    return s;
}

GraphState Graph::zero_state() const {
    return sample([](const std::string&, double) { return Complex{}; });
}

Graph Graph::reversed() const {
    Graph r = *this;
    for (auto& e : r.edges) std::swap(e.tail, e.head);
    for (auto& v : r.vertices) {
        std::swap(v.in, v.out);
        v.coupling = Eigen::MatrixXcd(v.coupling.adjoint());
    }
    return r;
}

GraphState transport(const Graph& g, const GraphState& state, double t, const EvolveOptions& opt) {
    check_layout(g, state);
    const double cells = g.grid.c * std::abs(t) / g.grid.dx;
    const double rounded = std::round(cells);
    const bool reverse = t < 0.0;
    if (std::abs(cells - rounded) <= 1e-9 * std::max(1.0, cells)) {
        GraphState out = shift(g, state, static_cast<long>(rounded), reverse);
        out.interpolated = state.interpolated;
        return out;
    }
    if (!opt.allow_interpolation)
        throw InvalidInput(fmt::format("time {} is not commensurate with dx/c = {}", t, g.grid.dx / g.grid.c));
    const long m0 = static_cast<long>(std::floor(cells));
    const double theta = cells - static_cast<double>(m0);
    GraphState a = shift(g, state, m0, reverse);
    const GraphState b = shift(g, state, m0 + 1, reverse);
    for (size_t i = 0; i < a.edges.size(); ++i) a.edges[i].f = (1.0 - theta) * a.edges[i].f + theta * b.edges[i].f;
    a.interpolated = true;
    return a;
}

Eigen::MatrixXcd full_graph_vertex(double k) {
    const double kp = std::sqrt(1.0 - k * k);
    Eigen::MatrixXcd m(2, 2);
    m << k, -kp, kp, k;
    return m;
}

Eigen::MatrixXcd dilation_vertex(Complex kappa) {
    const double a = std::abs(kappa);
    const double ap = std::sqrt(1.0 - a * a);
    const Complex u = a > 0.0 ? kappa / a : Complex(1.0);
    Eigen::MatrixXcd m(2, 2);
    m << a, -ap * u, ap, kappa;
    return m;
}

Eigen::MatrixXcd case_iii_vertex(double k, Complex theta) {
    const double kp = std::sqrt(1.0 - k * k);
    Eigen::MatrixXcd m(2, 2);
    m << k, kp * theta, kp, -k * theta;
    return m;
}

Graph contraction_graph(const GraphSpec& spec, const GridParams& grid) {
    spec.validate();
    Graph g;
    g.grid = grid;
    const double L = grid.L_max;
    switch (spec.graph_case) {
        case GraphCase::IStar:
            g.add_edge("left", spec.mu - L, L, kWindow, kOpen);
            g.add_edge("right", spec.nu, L, kOpen, kWindow);
            break;
        case GraphCase::I: {
            int l = g.add_edge("left", spec.mu - L, L, kWindow, kOpen);
            int r = g.add_edge("right", spec.mu, L, kOpen, kWindow);
            Eigen::MatrixXcd m(1, 1);
            m << spec.k;
            g.add_vertex({l}, {r}, m);
            break;
        }
        case GraphCase::II:
            g.add_edge("interval", spec.mu, spec.ell(), kOpen, kOpen);
            break;
        case GraphCase::III: {
            int l = g.add_edge("left", spec.mu - L, L, kWindow, kOpen);
            int r = g.add_edge("right", spec.mu, L, kOpen, kWindow);
            int a = g.add_edge("appendix", spec.mu, spec.ell(), kOpen, kOpen);
            Eigen::MatrixXcd m(2, 1);
            m << spec.k, std::sqrt(1.0 - spec.k * spec.k);
            g.add_vertex({l}, {r, a}, m);
            break;
        }
    }
    return g;
}

Graph generator_graph(const GraphSpec& spec, const GridParams& grid) {
    spec.validate();
    if (spec.theta.is_infinite()) throw InvalidInput("generator graph needs a finite theta");
    const Complex theta = spec.theta.value;
    if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw InvalidInput("generator graph needs |theta| = 1");
    Graph g;
    g.grid = grid;
    const double L = grid.L_max;
    Eigen::MatrixXcd one(1, 1);
    one << -theta;
    switch (spec.graph_case) {
        case GraphCase::IStar:
        case GraphCase::I: {
            const double right_start = spec.graph_case == GraphCase::I ? spec.mu : spec.nu;
            int l = g.add_edge("left", spec.mu - L, L, kWindow, kOpen);
            int r = g.add_edge("right", right_start, L, kOpen, kWindow);
            g.add_vertex({l}, {r}, one);
            break;
        }
        case GraphCase::II: {
            int e = g.add_edge("interval", spec.mu, spec.ell());
            g.add_vertex({e}, {e}, one);
            break;
        }
        case GraphCase::III: {
            int l = g.add_edge("left", spec.mu - L, L, kWindow, kOpen);
            int r = g.add_edge("right", spec.mu, L, kOpen, kWindow);
            int a = g.add_edge("appendix", spec.mu, spec.ell());
            g.add_vertex({l, a}, {r, a}, case_iii_vertex(spec.k, theta));
            break;
        }
    }
    return g;
}

Graph full_graph(double k, double mu, const GridParams& grid) {
    if (!(std::abs(k) <= 1.0)) throw InvalidInput("full graph needs |k| <= 1");
    Graph g;
    g.grid = grid;
    const double L = grid.L_max;
    int ul = g.add_edge("upper_left", mu - L, L, kWindow, kOpen);
    int ur = g.add_edge("upper_right", mu, L, kOpen, kWindow);
    int ll = g.add_edge("lower_left", mu - L, L, kWindow, kOpen);
    int lr = g.add_edge("lower_right", mu, L, kOpen, kWindow);
    g.add_vertex({ul, ll}, {ur, lr}, full_graph_vertex(k));
    return g;
}

Graph ring_graph(double ell, Complex wrap, const GridParams& grid) {
    Graph g;
    g.grid = grid;
    int e = g.add_edge("ring", 0.0, ell);
    Eigen::MatrixXcd m(1, 1);
    m << wrap;
    g.add_vertex({e}, {e}, m);
    return g;
}

Graph dilation_graph(double ell, Complex kappa, const GridParams& grid) {
    if (!(std::abs(kappa) < 1.0)) throw InvalidInput("dilation needs |kappa| < 1");
    Graph g;
    g.grid = grid;
    const double L = grid.L_max;
    int l = g.add_edge("left", -L, L, kWindow, kOpen);
    int r = g.add_edge("right", 0.0, L, kOpen, kWindow);
    int a = g.add_edge("ring", 0.0, ell);
    g.add_vertex({l, a}, {r, a}, dilation_vertex(kappa));
    return g;
}

Graph line_graph(const GridParams& grid) {
    Graph g;
    g.grid = grid;
    g.add_edge("line", -grid.L_max, 2.0 * grid.L_max, kWindow, kWindow);
    return g;
}

GraphState evolve_contraction(const GraphState& state, const GraphSpec& spec, double s, const EvolveOptions& opt) {
    if (!(s >= 0.0)) throw InvalidInput("contraction semigroup needs s >= 0");
    return transport(contraction_graph(spec, state.grid), state, s, opt);
}

GraphState evolve_unitary_full(const GraphState& state, double k, double mu, double t, const EvolveOptions& opt) {
    return transport(full_graph(k, mu, state.grid), state, t, opt);
}

namespace {
double ring_length(const GraphState& s) {
    if (s.edges.size() != 1) throw InvalidInput("ring evolution needs a single-edge state");
    return static_cast<double>(s.edges[0].f.size()) * s.grid.dx;
}
}  // namespace

GraphState evolve_ring(const GraphState& state, double flux, double t, const EvolveOptions& opt) {
    return transport(ring_graph(ring_length(state), std::exp(-I * flux), state.grid), state, t, opt);
}

GraphState evolve_dissipative_ring(const GraphState& state, Complex kappa, double t, const EvolveOptions& opt) {
    if (!(std::abs(kappa) < 1.0)) throw InvalidInput("dissipative ring needs |kappa| < 1");
    if (!(t >= 0.0)) throw InvalidInput("dissipative ring semigroup needs t >= 0");
    return transport(ring_graph(ring_length(state), kappa, state.grid), state, t, opt);
}

GraphState embed_case_iii(const GraphState& y, const Graph& full) {
    GraphState x = full.zero_state();
    x.edge("upper_left").f = y.edge("left").f;
    x.edge("upper_right").f = y.edge("right").f;
    const auto& app = y.edge("appendix").f;
    auto& lr = x.edge("lower_right").f;
    if (app.size() > lr.size()) throw InvalidInput("appendix longer than the truncation window");
    lr.head(app.size()) = app;
    return x;
}

GraphState compress_to_case_iii(const GraphState& x, const GraphState& layout) {
    GraphState y = layout;
    y.edge("left").f = x.edge("upper_left").f;
    y.edge("right").f = x.edge("upper_right").f;
    auto& app = y.edge("appendix").f;
    app = x.edge("lower_right").f.head(app.size());
    y.interpolated = x.interpolated;
    return y;
}

GraphState embed_ring(const GraphState& ring, const Graph& dilation) {
    GraphState x = dilation.zero_state();
    x.edge("ring").f = ring.edges.at(0).f;
    return x;
}

GraphState compress_to_ring(const GraphState& x, const GraphState& layout) {
    GraphState y = layout;
    y.edges.at(0).f = x.edge("ring").f;
    y.interpolated = x.interpolated;
    return y;
}

GraphState apply_gauge(const GraphState& state, const std::vector<Eigen::VectorXd>& potential) {
    if (potential.size() != state.edges.size()) throw InvalidInput("one potential array per edge is required");
    GraphState out = state;
    const double dx = state.grid.dx;
    for (size_t e = 0; e < out.edges.size(); ++e) {
        auto& f = out.edges[e].f;
        const auto& a = potential[e];
        if (a.size() != f.size()) throw InvalidInput("potential samples must match the edge grid");
        double acc = 0.0;
        for (long j = 0; j < f.size(); ++j) {
            const double phase = acc + 0.5 * dx * a[j];
            f[j] *= std::exp(I * phase);
            acc += dx * a[j];
        }
    }
    return out;
}

double flux_of(const Eigen::VectorXd& potential, double dx) { return dx * potential.sum(); }

Complex inner_product(const GraphState& a, const GraphState& b) {
    if (a.edges.size() != b.edges.size() || a.grid.dx != b.grid.dx)
        throw InvalidInput("inner product of states on different grids");
    Complex s{};
    for (size_t e = 0; e < a.edges.size(); ++e) {
        if (a.edges[e].f.size() != b.edges[e].f.size() || a.edges[e].x0 != b.edges[e].x0)
            throw InvalidInput("inner product of states on different grids");
        s += b.edges[e].f.dot(a.edges[e].f);
    }
    return a.grid.dx * s;
}

Complex tail_value(const EdgeSamples& e) {
    if (e.f.size() < 2) throw InvalidInput("edge too short for extrapolation");
    return 1.5 * e.f[0] - 0.5 * e.f[1];
}

Complex head_value(const EdgeSamples& e) {
    const long n = e.f.size();
    if (n < 2) throw InvalidInput("edge too short for extrapolation");
    return 1.5 * e.f[n - 1] - 0.5 * e.f[n - 2];
}

namespace {
long boundary_index(const EdgeSamples& e, double x, double dx) {
    const double r = (x - e.x0) / dx;
    const long j = std::llround(r);
    if (std::abs(r - static_cast<double>(j)) > 1e-6) throw InvalidInput("jump point must sit on a cell boundary");
    return j;
}
}  // namespace

Complex left_limit(const EdgeSamples& e, double x, double dx) {
    const long j = boundary_index(e, x, dx);
    if (j < 2 || j > e.f.size()) throw InvalidInput("left limit needs two cells to the left");
    return 1.5 * e.f[j - 1] - 0.5 * e.f[j - 2];
}

Complex right_limit(const EdgeSamples& e, double x, double dx) {
    const long j = boundary_index(e, x, dx);
    if (j < 0 || j + 1 >= e.f.size()) throw InvalidInput("right limit needs two cells to the right");
    return 1.5 * e.f[j] - 0.5 * e.f[j + 1];
}

double max_abs_difference(const GraphState& a, const GraphState& b) {
    if (a.edges.size() != b.edges.size()) throw InvalidInput("states have different layouts");
    double m = 0.0;
    for (size_t e = 0; e < a.edges.size(); ++e) {
        if (a.edges[e].f.size() != b.edges[e].f.size()) throw InvalidInput("states have different layouts");
        if (a.edges[e].f.size() > 0) m = std::max(m, (a.edges[e].f - b.edges[e].f).cwiseAbs().maxCoeff());
    }
    return m;
}

void write_state_csv(std::ostream& os, const GraphState& s, const std::string& anchor) {
    os << "# anchor: " << anchor << "\n";
    os << fmt::format("# dx: {:.17g}\n# c: {:.17g}\n", s.grid.dx, s.grid.c);
    os << "edge_id,x,re,im\n";
    for (const auto& e : s.edges)
        for (long j = 0; j < e.f.size(); ++j)
            os << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", e.name, e.x0 + (static_cast<double>(j) + 0.5) * s.grid.dx,
                              e.f[j].real(), e.f[j].imag());
}

}  // namespace mono
