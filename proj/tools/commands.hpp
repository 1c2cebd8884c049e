#pragma once

#include <cstdint>
#include <string>

#include "config.hpp"

namespace mono::cli {

struct RunOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
};

// Each command writes <name>.csv (plus extra tables) and <name>.json into out_dir.
// Returns 0 on success, 3 when a predicted-vs-measured check misses its tolerance.
int run_spectral(const Config& cfg, const RunOptions& opt);
int run_measure(const Config& cfg, const RunOptions& opt);
int run_evolve(const Config& cfg, const RunOptions& opt);
int run_monitor(const Config& cfg, const RunOptions& opt);
int run_zeno(const Config& cfg, const RunOptions& opt);
int run_couple(const Config& cfg, const RunOptions& opt);
int run_stable(const Config& cfg, const RunOptions& opt);

struct SelftestOptions {
    bool inject_fault = false;
    std::uint64_t seed = 0;
};
int run_selftest(const SelftestOptions& opt);

}  // namespace mono::cli
