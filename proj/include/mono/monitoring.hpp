#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mono/core.hpp"
#include "mono/graph_dynamics.hpp"
#include "mono/graph_spectral.hpp"
#include "mono/halfline.hpp"

namespace mono {

enum class ScenarioKind { RingUnitary, RingDissipative, Line, GraphTheta };

const char* to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

// Interior discontinuity of the state, at a cell boundary of the named edge.
struct JumpSite {
    std::string edge;
    double x = 0.0;
};

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::RingUnitary;
    GraphState state;
    double flux = 0.0;      // ring: wrap factor exp(-i flux)
    Complex kappa{0.0};     // dissipative ring
    GraphSpec graph;        // generator D_theta on a metric graph
    std::vector<JumpSite> jumps;
    EvolveOptions evolve;

    double ell() const;
};

Graph scenario_graph(const ScenarioSpec& sc);

// t / n rounded to a whole number of cells; throws if that number is zero.
double snap_time(const ScenarioSpec& sc, double t);

// <U(t) phi, phi> with U the unitary group or contraction semigroup of the scenario.
Complex survival_amplitude(const ScenarioSpec& sc, double t);
double monitored_survival(const ScenarioSpec& sc, double t, long n);

struct MonitoringRow {
    long n = 0;
    double step = 0.0;
    double abs_amplitude = 0.0;
    double tau_hat = 0.0;
};

struct MonitoringResult {
    double t = 0.0;
    std::vector<MonitoringRow> rows;
    double tau_extrapolated = 0.0;
    double residual = 0.0;
    bool divergent = false;
};

std::vector<long> default_ladder();
MonitoringResult estimate_decay_rate(const ScenarioSpec& sc, double t, const std::vector<long>& ladder = default_ladder());

// Closed formula for the scenario, in units of c.
double predicted_tau(const ScenarioSpec& sc);
// Same quantity from the vertex conditions of the network, for any scenario.
double vertex_mismatch_tau(const ScenarioSpec& sc);

enum class ZenoKind { Zeno, AntiZeno, Resonant, Unknown };
const char* to_string(ZenoKind k);

struct Classification {
    ZenoKind kind = ZenoKind::Unknown;
    double tau = 0.0;
    std::string diagnostics;
};

Classification classify_state(const ScenarioSpec& sc, double zeno_tol = 1e-8);
Classification classify_by_tails(const SpectralDistribution& dist,
                                 const std::vector<double>& ladder = {1e2, 1e3, 1e4});
// Monitored survival below 1e-6 at n = 2^12 for every t.
bool anti_zeno_proxy(const std::function<Complex(double)>& amplitude, const std::vector<double>& times);

enum class TimeScale { Linear, Sqrt, Square, TwoThirds };
std::function<double(double)> time_scale(TimeScale s);

// [p(scale(t/n))]^n.
double timescale_survival(const std::function<Complex(double)>& amplitude, const std::function<double(double)>& scale,
                          double t, long n);
double timescale_survival(const ScenarioSpec& sc, const std::function<double(double)>& scale, double t, long n);

void write_monitoring_csv(std::ostream& os, const MonitoringResult& r, const std::string& anchor);

}  // namespace mono
