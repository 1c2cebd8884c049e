#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "commands.hpp"

using namespace mono;
using namespace mono::cli;

int main(int argc, char** argv) {
    CLI::App app{"monitoring, dissipative graphs and stable laws"};
    app.require_subcommand(1);
    std::string config_path;
    RunOptions ro;
    SelftestOptions so;

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const Config&, const RunOptions&);
    };
    const Cmd cmds[] = {
        {"spectral", "tabulate S(lambda+i0) and transmission for a graph triple", run_spectral},
        {"measure", "compare the spectral-measure integral with the closed-form Weyl function", run_measure},
        {"evolve", "evolve a state on a metric graph", run_evolve},
        {"monitor", "estimate the monitored decay rate of a scenario", run_monitor},
        {"zeno", "classify a state as Zeno, anti-Zeno or resonant", run_zeno},
        {"couple", "n-fold coupling of a rank-one triple", run_couple},
        {"stable", "sample a stable law and check its characteristic function", run_stable},
    };
    std::vector<std::pair<CLI::App*, const Cmd*>> subs;
    for (const auto& c : cmds) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        s->add_option("--config", config_path, "INI config file")->required();
        s->add_option("--out", ro.out_dir, "output directory");
        s->add_option("--seed", ro.seed, "RNG seed");
        subs.emplace_back(s, &c);
    }
    CLI::App* self = app.add_subcommand("selftest", "run the invariant suite");
    self->add_option("--seed", so.seed, "RNG seed");
    self->add_flag("--inject-fault", so.inject_fault, "force a tolerance failure (test hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (self->parsed()) return run_selftest(so);
        for (auto& [s, c] : subs) {
            if (!s->parsed()) continue;
            const Config cfg = Config::load(config_path);
            return c->fn(cfg, ro);
        }
    } catch (const InvalidInput& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const TruncationError& e) {
        std::cerr << "invalid config: " << e.what() << " (increase grid.L_max)\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
