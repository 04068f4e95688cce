#pragma once

#include "tlh2/lti.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tlh2 {

struct OptimizerConfig {
    double alpha_init = 1.0;
    double beta = 0.5;   // backtracking factor, in (0,1)
    double c1 = 1e-4;    // Armijo parameter, in (0,1)
    double tol = 1e-5;   // stacked gradient-norm stopping threshold
    int max_iters = 5000;
    int max_backtracks = 60;  // alpha shrinks below double-precision relevance
    bool stability_checked = false;
    std::uint64_t seed = 0;  // consumed by random initialization only

    void validate() const;  // throws std::invalid_argument
};

enum class StopReason {
    TolReached,
    MaxIters,
    BacktrackExhausted,
};

/// Spelled exactly as written into trace sidecars: "tol-reached",
/// "max-iters", "backtrack-exhausted".
const char* to_string(StopReason reason);

/// State of iterate l plus the step accepted from it (step == 0 on the
/// final record, where no step was taken).
struct IterationRecord {
    int iter = 0;
    double objective = 0.0;
    double rel_error = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;
    int backtracks = 0;
    double spectral_radius = 0.0;
    double wall_ms = 0.0;
};

struct ConvergenceTrace {
    std::vector<IterationRecord> iterations;
    StopReason reason = StopReason::MaxIters;

    /// Accepted descent steps (records with step > 0).
    int descent_steps() const;
};

/**
 * Hankel-SVD realization of order r from impulse data, used as the
 * optimizer's initial point. Block Hankel split: q = floor(L/2) block rows,
 * s = L-1-q block columns, H0[i,j] = h[i+j], H1[i,j] = h[i+j+1].
 * Throws RankDeficient when sigma_r <= 1e-12 * sigma_1.
 */
ReducedModel era_init(const ImpulseData& data, int r);

/// Gaussian initial point with A_hat rescaled to spectral radius 1/2;
/// deterministic in seed. Baseline alternative to era_init.
ReducedModel random_init(const ImpulseData& data, int r, std::uint64_t seed);

/**
 * Gradient descent with Armijo backtracking on the data-driven objective.
 * Returns the final iterate and the full per-iteration trace. Runs the
 * stability-checked variant when cfg.stability_checked is set.
 */
std::pair<ReducedModel, ConvergenceTrace> minimize(const ImpulseData& data,
                                                   const ReducedModel& init,
                                                   const OptimizerConfig& cfg);

/// Same loop with step acceptance additionally requiring rho(A_hat) < 1;
/// every trace iterate is stable. Throws InfeasibleInit if the initial
/// point is not.
std::pair<ReducedModel, ConvergenceTrace> minimize_stability_checked(const ImpulseData& data,
                                                                     const ReducedModel& init,
                                                                     const OptimizerConfig& cfg);

}  // namespace tlh2
