#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stochint/errors.hpp"
#include "stochint/experiments.hpp"
#include "stochint/version.hpp"

namespace {

struct CliState {
    stochint::ExperimentConfig flags;  // values bound to the option parser
    std::string levels_text = "6..12";
    std::string config_file;
};

void add_common_options(CLI::App* sub, CliState& state) {
    sub->add_option("--seed", state.flags.seed, "base RNG seed; the path index is the stream")
        ->capture_default_str();
    sub->add_option("--paths", state.flags.paths, "Monte Carlo path count")->capture_default_str();
    sub->add_option("--horizon", state.flags.horizon, "time horizon T")->capture_default_str();
    sub->add_option("--grid", state.flags.grid_cells, "time grid cells")->capture_default_str();
    sub->add_option("--levels", state.levels_text, "dyadic level range a..b")->capture_default_str();
    sub->add_option("--p", state.flags.p, "L^p exponent")->capture_default_str();
    sub->add_option("--mode", state.flags.mode,
                    "projection mode for adapted integrands: left_limit | dyadic "
                    "(dyadic uses the upper level of --levels and anchor --s)")
        ->capture_default_str();
    sub->add_option("--s", state.flags.s, "dyadic anchor in [0, horizon]")->capture_default_str();
    sub->add_option("--out", state.flags.out_dir, "output directory")->capture_default_str();
    sub->add_option("--driver", state.flags.driver,
                    "isometry driver: wiener | qwiener | prm | cpoisson")
        ->capture_default_str();
    sub->add_option("--modes", state.flags.modes, "SPDE Galerkin dimension")->capture_default_str();
    sub->add_option("--rate", state.flags.rate, "Poisson intensity / Wiener variance rate")
        ->capture_default_str();
    sub->add_option("--noise", state.flags.noise, "spde noise: gauss | jump | both")
        ->capture_default_str();
    sub->add_option("--path-class", state.flags.path_class, "project paths: poisson | wiener")
        ->capture_default_str();
    sub->add_option("--z", state.flags.z, "z-score threshold for statistical checks")
        ->capture_default_str();
    sub->add_option("--threads", state.flags.threads, "worker threads (stream-indexed, "
                    "result is thread-count independent)")
        ->capture_default_str();
    sub->add_option("--config", state.config_file, "JSON config file; flags override its values");
}

void merge_flag_overrides(const CLI::App* sub, const CliState& state,
                          stochint::ExperimentConfig& cfg) {
    if (sub->count("--seed")) cfg.seed = state.flags.seed;
    if (sub->count("--paths")) cfg.paths = state.flags.paths;
    if (sub->count("--horizon")) cfg.horizon = state.flags.horizon;
    if (sub->count("--grid")) cfg.grid_cells = state.flags.grid_cells;
    if (sub->count("--levels")) stochint::parse_levels(state.levels_text, cfg);
    if (sub->count("--p")) cfg.p = state.flags.p;
    if (sub->count("--mode")) cfg.mode = state.flags.mode;
    if (sub->count("--s")) cfg.s = state.flags.s;
    if (sub->count("--out")) cfg.out_dir = state.flags.out_dir;
    if (sub->count("--driver")) cfg.driver = state.flags.driver;
    if (sub->count("--modes")) cfg.modes = state.flags.modes;
    if (sub->count("--rate")) cfg.rate = state.flags.rate;
    if (sub->count("--noise")) cfg.noise = state.flags.noise;
    if (sub->count("--path-class")) cfg.path_class = state.flags.path_class;
    if (sub->count("--z")) cfg.z = state.flags.z;
    if (sub->count("--threads")) cfg.threads = state.flags.threads;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("stochint ") + stochint::kVersion +
                 " - stochastic integration experiments (batch, deterministic)"};
    app.require_subcommand(0, 1);
    app.footer(
        "Exit codes: 0 success, 1 statistical failure, 2 configuration error.\n"
        "Config file keys mirror the flags: experiment, seed, paths, horizon, grid,\n"
        "levels, p, mode, s, out, driver, modes, rate, noise, path_class, z, threads.\n"
        "Unknown keys are a hard error. Every run writes <experiment>.csv plus a\n"
        "<experiment>.meta.json sidecar sufficient to reproduce it.");

    CliState state;
    std::string top_config;
    app.add_option("--config", top_config,
                   "JSON config file naming the experiment (alternative to a subcommand)");

    const std::vector<std::pair<std::string, std::string>> subcommands{
        {"poisson-example", "Poisson martingale contrast: per-path pathwise-vs-extended "
                            "identity and the two mean tests"},
        {"isometry", "second-moment isometry for the selected driver"},
        {"project", "dyadic convergence table and exact left-limit projection checks"},
        {"qwiener", "Q-Wiener trace and isometry checks"},
        {"prm", "Poisson random measure counting, compensation and isometry checks"},
        {"spde", "stochastic heat equation moment matching"},
        {"report", "aggregate metadata sidecars under --out into report.csv"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, description] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        add_common_options(sub, state);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const CLI::App* active = nullptr;
        std::string active_name;
        for (const auto& [name, sub] : subs) {
            if (sub->parsed()) {
                active = sub;
                active_name = name;
            }
        }

        std::string config_file = state.config_file.empty() ? top_config : state.config_file;
        stochint::ExperimentConfig cfg;
        if (!config_file.empty()) cfg = stochint::config_load(config_file);

        if (active != nullptr) {
            if (!cfg.experiment.empty() && cfg.experiment != active_name) {
                throw stochint::ConfigError("config file names experiment '" + cfg.experiment +
                                            "' but the subcommand is '" + active_name + "'");
            }
            cfg.experiment = active_name;
            merge_flag_overrides(active, state, cfg);
        } else if (cfg.experiment.empty()) {
            throw stochint::ConfigError(
                "no experiment selected: pass a subcommand or a --config file with an "
                "\"experiment\" key");
        }

        stochint::ExperimentResult result = stochint::run_experiment(cfg);
        for (const auto& line : result.lines) std::cout << line << "\n";
        for (const auto& file : result.files_written) std::cout << "wrote " << file << "\n";
        std::cout << (result.pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
        return result.pass ? 0 : 1;
    } catch (const stochint::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
