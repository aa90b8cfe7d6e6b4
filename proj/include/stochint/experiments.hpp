#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stochint/verify.hpp"

namespace stochint {

// Fully resolved configuration of one experiment run. Defaults are the
// documented CLI defaults; a JSON config file and then command-line flags
// layer on top (flags win).
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::size_t paths = 10000;
    double horizon = 1.0;
    std::size_t grid_cells = 64;
    int levels_lo = 6;
    int levels_hi = 12;
    double p = 2.0;
    std::string mode = "left_limit";  // left_limit | dyadic
    double s = 0.0;                   // dyadic anchor
    std::string out_dir = "out";
    std::string driver = "wiener";  // isometry: wiener | qwiener | prm | cpoisson
    std::size_t modes = 8;
    double rate = 1.0;
    std::string noise = "both";          // spde: gauss | jump | both
    std::string path_class = "poisson";  // project: poisson | wiener
    double z = kDefaultZThreshold;
    std::size_t threads = 1;

    void validate() const;  // throws ConfigError
};

// Strict JSON loader: unknown keys are a hard error, malformed documents
// report the byte offset.
ExperimentConfig config_load(const std::filesystem::path& file);

// Parses "a..b" (or a single "n") into the level range.
void parse_levels(const std::string& text, ExperimentConfig& cfg);

struct ExperimentResult {
    bool pass = false;
    std::vector<std::string> lines;          // one human-readable line per check
    std::vector<std::string> files_written;  // CSV + metadata sidecars
};

// Dispatches on cfg.experiment: poisson-example, isometry, project, qwiener,
// prm, spde, report. Writes CSV output plus a JSON metadata sidecar
// sufficient to re-run the experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace stochint
