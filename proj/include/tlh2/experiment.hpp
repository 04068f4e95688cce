#pragma once

#include "tlh2/lti.hpp"
#include "tlh2/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tlh2 {

/// Full sweep description: one optimization run per (horizon, sigma) cell.
struct ExperimentConfig {
    // System source: a model file, or surrogate generator parameters.
    std::optional<std::filesystem::path> model_path;
    int n = 120;
    int m = 2;
    int p = 2;
    double rho_max = 0.99;
    std::uint64_t system_seed = 7;

    std::vector<int> horizons;
    int r = 2;
    std::vector<double> sigmas;
    std::uint64_t noise_seed = 1;

    OptimizerConfig optimizer;
    std::filesystem::path output_dir;
    std::string init = "era";  // "era" or "random"
    std::uint64_t init_seed = 0;

    void validate() const;
};

struct CellResult {
    double sigma = 0.0;
    int horizon = 0;
    double init_rel_err = 0.0;
    double final_rel_err = 0.0;
    int iters = 0;
    std::string reason;
    bool failed = false;
};

/// JSON config mirroring the field names above; "system" is either
/// {"model": path} or {"n","m","p","rho_max","seed"}.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/**
 * Runs every (horizon, sigma) cell, writing one trace per cell
 * (trace_sigma<s>_L<L>.csv + sidecar) and summary.csv into output_dir.
 * A failing cell is recorded in the summary and the sweep continues.
 */
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

}  // namespace tlh2
