#include "config.hpp"

#include <fmt/format.h>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace mono::cli {

namespace pt = boost::property_tree;

Config Config::load(const std::string& path) {
    Config c;
    try {
        pt::read_ini(path, c.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw InvalidInput(fmt::format("config: {}", e.what()));
    }
    return c;
}

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream is(text);
    try {
        pt::read_ini(is, c.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw InvalidInput(fmt::format("config: {}", e.what()));
    }
    return c;
}

bool Config::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

bool Config::has_section(const std::string& section) const { return tree_.get_child_optional(section).has_value(); }

std::string Config::text(const std::string& key, std::optional<std::string> fallback) const {
    if (auto v = tree_.get_optional<std::string>(key)) return boost::algorithm::trim_copy(*v);
    if (fallback) return *fallback;
    throw InvalidInput(fmt::format("config field '{}' is missing", key));
}

double Config::number(const std::string& key, std::optional<double> fallback) const {
    if (!has(key)) {
        if (fallback) return *fallback;
        throw InvalidInput(fmt::format("config field '{}' is missing", key));
    }
    const std::string s = text(key);
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput(fmt::format("config field '{}': '{}' is not a finite number", key, s));
    }
}

long Config::integer(const std::string& key, std::optional<long> fallback) const {
    if (!has(key)) {
        if (fallback) return *fallback;
        throw InvalidInput(fmt::format("config field '{}' is missing", key));
    }
    const std::string s = text(key);
    try {
        size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput(fmt::format("config field '{}': '{}' is not an integer", key, s));
    }
}

bool Config::flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string s = boost::algorithm::to_lower_copy(text(key));
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw InvalidInput(fmt::format("config field '{}': '{}' is not a boolean", key, s));
}

Complex Config::complex(const std::string& key, Complex fallback) const {
    return {number(key + "_re", fallback.real()), number(key + "_im", fallback.imag())};
}

std::vector<double> Config::numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<std::string> parts;
    const std::string s = text(key);
    boost::algorithm::split(parts, s, boost::is_any_of(","));
    std::vector<double> out;
    for (auto& p : parts) {
        boost::algorithm::trim(p);
        try {
            out.push_back(std::stod(p));
        } catch (const std::exception&) {
            throw InvalidInput(fmt::format("config field '{}': '{}' is not a number", key, p));
        }
    }
    return out;
}

GridParams grid_from(const Config& cfg) {
    GridParams g;
    g.dx = cfg.number("grid.dx", 1e-3);
    g.c = cfg.number("grid.c", 1.0);
    g.L_max = cfg.number("grid.L_max", 4.0);
    if (!(g.dx > 0.0)) throw InvalidInput("config field 'grid.dx' must be positive");
    if (!(g.c > 0.0)) throw InvalidInput("config field 'grid.c' must be positive");
    if (!(g.L_max > 0.0)) throw InvalidInput("config field 'grid.L_max' must be positive");
    return g;
}

GraphSpec graph_from(const Config& cfg) {
    GraphSpec s;
    const std::string tag = cfg.text("graph.case");
    try {
        s.graph_case = graph_case_from_string(tag);
    } catch (const InvalidInput&) {
        throw InvalidInput(fmt::format("config field 'graph.case': unknown case '{}'", tag));
    }
    s.mu = cfg.number("graph.mu", 0.0);
    s.nu = cfg.number("graph.nu", 1.0);
    s.k = cfg.number("graph.k", 0.0);
    if (cfg.flag("graph.theta_infinite", false))
        s.theta = Extended::infinity();
    else if (cfg.has("graph.theta_arg"))
        s.theta = Extended(std::exp(I * cfg.number("graph.theta_arg")));
    else
        s.theta = Extended(cfg.complex("graph.theta", 1.0));
    try {
        s.validate();
    } catch (const InvalidInput& e) {
        throw InvalidInput(fmt::format("config section 'graph': {}", e.what()));
    }
    return s;
}

namespace {

double bump(double d, double w) {
    const double r = d / w;
    return std::abs(r) < 1.0 ? (1.0 - r * r) * (1.0 - r * r) : 0.0;
}

std::vector<JumpSite> parse_jumps(const Config& cfg) {
    std::vector<JumpSite> out;
    if (!cfg.has("state.jumps")) return out;
    std::vector<std::string> parts;
    const std::string s = cfg.text("state.jumps");
    boost::algorithm::split(parts, s, boost::is_any_of(";"));
    for (auto p : parts) {
        boost::algorithm::trim(p);
        if (p.empty()) continue;
        const auto colon = p.find(':');
        if (colon == std::string::npos)
            throw InvalidInput(fmt::format("config field 'state.jumps': expected edge:x, got '{}'", p));
        try {
            out.push_back({boost::algorithm::trim_copy(p.substr(0, colon)), std::stod(p.substr(colon + 1))});
        } catch (const std::invalid_argument&) {
            throw InvalidInput(fmt::format("config field 'state.jumps': bad position in '{}'", p));
        }
    }
    return out;
}

}  // namespace

GraphState state_from(const Config& cfg, const Graph& net, std::vector<JumpSite>* jumps) {
    const std::string kind = cfg.text("state.kind");
    GraphState st;
    if (kind == "affine") {
        // a + b x, plus an optional step of size `step` at x = step_at.
        const Complex a = cfg.complex("state.a", 1.0), b = cfg.complex("state.b", 0.0);
        const Complex step = cfg.complex("state.step", 0.0);
        const double at = cfg.number("state.step_at", 0.0);
        st = net.sample([&](const std::string&, double x) { return a + b * x + (x > at ? step : Complex{}); });
    } else if (kind == "fourier") {
        const auto modes = cfg.numbers("state.modes", {0.0});
        if (net.edges.size() != 1) throw InvalidInput("config field 'state.kind': fourier states need a ring");
        const double ell = static_cast<double>(net.edges[0].cells) * net.grid.dx;
        st = net.sample([&](const std::string&, double x) {
            Complex s{};
            for (double m : modes) s += std::exp(2.0 * pi * I * m * x / ell);
            return s;
        });
    } else if (kind == "indicator") {
        const double lo = cfg.number("state.from"), hi = cfg.number("state.to");
        if (!(hi > lo)) throw InvalidInput("config field 'state.to' must exceed 'state.from'");
        st = net.sample([&](const std::string&, double x) { return Complex(x > lo && x < hi ? 1.0 : 0.0); });
    } else if (kind == "edges") {
        // Half-line edges carry a bump of the given amplitude at their vertex end; finite edges are linear.
        const double w = cfg.number("state.width", 1.0);
        st = net.sample([&](const std::string& e, double x) {
            const EdgeGeom& g = net.edges[net.edge_index(e)];
            const double len = static_cast<double>(g.cells) * net.grid.dx;
            const Complex a0 = cfg.complex("state." + e, 0.0);
            if (g.tail == kWindow) return a0 * bump(g.x0 + len - x, w);
            if (g.head == kWindow) return a0 * bump(x - g.x0, w);
            const Complex a1 = cfg.complex("state." + e + "_end", a0);
            const double u = (x - g.x0) / len;
            return (1.0 - u) * a0 + u * a1;
        });
    } else {
        throw InvalidInput(fmt::format("config field 'state.kind': unknown state '{}'", kind));
    }
    if (cfg.flag("state.normalize", true)) {
        if (!(st.norm2() > 0.0)) throw InvalidInput("config section 'state' describes the zero state");
        st.normalize();
    }
    if (jumps) *jumps = parse_jumps(cfg);
    return st;
}

ScenarioSpec scenario_from(const Config& cfg) {
    ScenarioSpec sc;
    const std::string kind = cfg.text("scenario.kind");
    try {
        sc.kind = scenario_kind_from_string(kind);
    } catch (const InvalidInput&) {
        throw InvalidInput(fmt::format("config field 'scenario.kind': unknown scenario '{}'", kind));
    }
    const GridParams grid = grid_from(cfg);
    sc.flux = cfg.number("scenario.flux", 0.0);
    sc.kappa = cfg.complex("scenario.kappa", 0.0);
    sc.evolve.allow_interpolation = cfg.flag("scenario.interpolate", false);
    Graph net;
    switch (sc.kind) {
        case ScenarioKind::RingUnitary:
        case ScenarioKind::RingDissipative: {
            const double ell = cfg.number("scenario.ell", 1.0);
            if (sc.kind == ScenarioKind::RingDissipative && !(std::abs(sc.kappa) < 1.0))
                throw InvalidInput("config field 'scenario.kappa' must satisfy |kappa| < 1");
            net = ring_graph(ell, 1.0, grid);
            break;
        }
        case ScenarioKind::Line: net = line_graph(grid); break;
        case ScenarioKind::GraphTheta:
            sc.graph = graph_from(cfg);
            net = generator_graph(sc.graph, grid);
            break;
    }
    sc.state = state_from(cfg, net, &sc.jumps);
    return sc;
}

double tolerance(double fallback) {
    const char* env = std::getenv("MONO_TOL");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw InvalidInput(fmt::format("MONO_TOL='{}' is not a positive number", env));
    return v;
}

}  // namespace mono::cli
