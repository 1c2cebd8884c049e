#pragma once

#include <boost/property_tree/ptree.hpp>
#include <optional>
#include <string>
#include <vector>

#include "mono/graph_dynamics.hpp"
#include "mono/graph_spectral.hpp"
#include "mono/monitoring.hpp"

namespace mono::cli {

// Flat INI file: [section] headers, key = value lines. Keys are addressed as "section.key".
class Config {
public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;
    bool has_section(const std::string& section) const;
    double number(const std::string& key, std::optional<double> fallback = std::nullopt) const;
    long integer(const std::string& key, std::optional<long> fallback = std::nullopt) const;
    bool flag(const std::string& key, bool fallback) const;
    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) const;
    Complex complex(const std::string& key, Complex fallback) const;
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;

private:
    boost::property_tree::ptree tree_;
};

GridParams grid_from(const Config& cfg);
GraphSpec graph_from(const Config& cfg);
// State from the [state] section on the given network; jump sites declared there are returned too.
GraphState state_from(const Config& cfg, const Graph& net, std::vector<JumpSite>* jumps = nullptr);
ScenarioSpec scenario_from(const Config& cfg);

// MONO_TOL when set, else the command default.
double tolerance(double fallback);

}  // namespace mono::cli
