#pragma once

#include <stdexcept>
#include <string>

namespace tlh2 {

/// A Stein/Sylvester linear system was singular, its spectral-radius
/// precondition failed, or the solution did not meet the residual bound.
struct SolveFailure : std::runtime_error {
    explicit SolveFailure(const std::string& what) : std::runtime_error(what) {}
};

/// The Hankel matrix handed to ERA has numerical rank below the requested order.
struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

/// The stability-checked optimizer was given an initial point with rho(A_hat) >= 1.
struct InfeasibleInit : std::runtime_error {
    explicit InfeasibleInit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tlh2
