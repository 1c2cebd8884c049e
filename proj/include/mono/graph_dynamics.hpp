#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mono/core.hpp"
#include "mono/graph_spectral.hpp"

namespace mono {

struct GridParams {
    double dx = 1e-3;
    double c = 1.0;
    double L_max = 4.0;
};

// Samples live at cell centres x0 + (j + 1/2) dx; transport runs toward increasing j.
struct EdgeSamples {
    std::string name;
    double x0 = 0.0;
    Eigen::VectorXcd f;
};

struct GraphState {
    GridParams grid;
    std::vector<EdgeSamples> edges;
    bool interpolated = false;

    const EdgeSamples& edge(const std::string& name) const;
    EdgeSamples& edge(const std::string& name);
    double norm2() const;
    void normalize();
};

// End markers for edges not attached to a vertex.
inline constexpr int kOpen = -1;    // no inflow at a tail, physical loss at a head
inline constexpr int kWindow = -2;  // truncation of an infinite edge

struct EdgeGeom {
    std::string name;
    double x0 = 0.0;
    long cells = 0;
    int tail = kOpen;
    int head = kOpen;
};

struct Vertex {
    std::vector<int> in;
    std::vector<int> out;
    Eigen::MatrixXcd coupling;  // out x in
};

struct Graph {
    GridParams grid;
    std::vector<EdgeGeom> edges;
    std::vector<Vertex> vertices;

    int add_edge(const std::string& name, double x0, double length, int tail = kOpen, int head = kOpen);
    int add_vertex(std::vector<int> in, std::vector<int> out, Eigen::MatrixXcd coupling);
    int edge_index(const std::string& name) const;
    GraphState sample(const std::function<Complex(const std::string&, double)>& fn) const;
    GraphState zero_state() const;
    Graph reversed() const;
};

struct EvolveOptions {
    bool allow_interpolation = false;
};

// Exact transport by c t / dx cells; negative t runs the adjoint network.
GraphState transport(const Graph& g, const GraphState& state, double t, const EvolveOptions& opt = {});

// Networks. Edge names: left/right half-lines, interval/appendix/ring finite edges.
Graph contraction_graph(const GraphSpec& spec, const GridParams& grid);
Graph generator_graph(const GraphSpec& spec, const GridParams& grid);
Graph full_graph(double k, double mu, const GridParams& grid);
Graph ring_graph(double ell, Complex wrap, const GridParams& grid);
Graph dilation_graph(double ell, Complex kappa, const GridParams& grid);
Graph line_graph(const GridParams& grid);

Eigen::MatrixXcd full_graph_vertex(double k);
Eigen::MatrixXcd dilation_vertex(Complex kappa);
Eigen::MatrixXcd case_iii_vertex(double k, Complex theta);

GraphState evolve_contraction(const GraphState& state, const GraphSpec& spec, double s, const EvolveOptions& opt = {});
GraphState evolve_unitary_full(const GraphState& state, double k, double mu, double t, const EvolveOptions& opt = {});
GraphState evolve_ring(const GraphState& state, double flux, double t, const EvolveOptions& opt = {});
GraphState evolve_dissipative_ring(const GraphState& state, Complex kappa, double t, const EvolveOptions& opt = {});

// Embedding of a Case III state into the full graph, and the projection back.
GraphState embed_case_iii(const GraphState& y, const Graph& full);
GraphState compress_to_case_iii(const GraphState& x, const GraphState& layout);
// Ring part of a dilation-graph state, and the embedding of a ring state.
GraphState embed_ring(const GraphState& ring, const Graph& dilation);
GraphState compress_to_ring(const GraphState& x, const GraphState& layout);

// Multiplies by exp(i phi(x)), phi the running integral of the potential from each edge's start.
GraphState apply_gauge(const GraphState& state, const std::vector<Eigen::VectorXd>& potential);
double flux_of(const Eigen::VectorXd& potential, double dx);

// Midpoint-rule L2 product, linear in the first slot.
Complex inner_product(const GraphState& a, const GraphState& b);

// One-sided two-point extrapolation to the ends of an edge, or to a cell boundary inside it.
Complex tail_value(const EdgeSamples& e);
Complex head_value(const EdgeSamples& e);
Complex left_limit(const EdgeSamples& e, double x, double dx);
Complex right_limit(const EdgeSamples& e, double x, double dx);

double max_abs_difference(const GraphState& a, const GraphState& b);

void write_state_csv(std::ostream& os, const GraphState& s, const std::string& anchor);

}  // namespace mono
