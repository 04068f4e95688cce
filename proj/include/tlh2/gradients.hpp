#pragma once

#include "tlh2/lti.hpp"

namespace tlh2 {

/// Gradient of the time-limited objective with respect to each block of
/// (A_hat, B_hat, C_hat); norm is the stacked Frobenius norm.
struct GradientTriple {
    GradientTriple(Matrix dA_, Matrix dB_, Matrix dC_);

    Matrix dA;
    Matrix dB;
    Matrix dC;
    double norm;
};

/// Intermediates of the model-based gradient path: P solves the Stein
/// equation A_hat P A_hat^T + B_hat B_hat^T = P, R the Sylvester equation
/// A R A_hat^T + B B_hat^T = R, R_L/S_L are the finite cross sums, and M is
/// the endpoint matrix R^T (A^T)^L C^T C_hat - P (A_hat^T)^L C_hat^T C_hat.
struct ModelBasedWorkspace {
    Matrix P;    // r x r
    Matrix R;    // n x r
    Matrix R_L;  // n x r
    Matrix S_L;  // n x r
    Matrix M;    // r x r
};

/**
 * Gradient from impulse data alone (the production path). dA is the double
 * sum over (k, i) of (A_hat^{k-1-i})^T C_hat^T E_k B_hat^T (A_hat^i)^T with
 * E_k = C_hat A_hat^k B_hat - h[k], evaluated in O(horizon) block products
 * via a backward recursion. Never touches a StateSpaceModel.
 */
GradientTriple gradient_data(const ImpulseData& data, const ReducedModel& rom);

/**
 * Gradient from the full-order matrices (oracle/cross-validation path).
 * Requires rho(A_hat)^2 and rho(A) rho(A_hat) below 1 with margin 1e-8 for
 * the infinite-horizon P and R to exist; throws SolveFailure otherwise.
 */
GradientTriple gradient_model(const StateSpaceModel& truth, const ReducedModel& rom, int horizon);

ModelBasedWorkspace model_workspace(const StateSpaceModel& truth, const ReducedModel& rom,
                                    int horizon);

/// Solves A_hat P A_hat^T + rhs = P by Kronecker vectorization and a dense
/// LU solve; checks the residual against 1e-10 * ||P||.
Matrix solve_stein(const Matrix& A_hat, const Matrix& rhs);

/// Solves A R A_hat^T + rhs = R (rhs is n x r) the same way.
Matrix solve_sylvester(const Matrix& A, const Matrix& A_hat, const Matrix& rhs);

/// sum_{j=0}^{L-1} (A_hat^T)^j X (A_hat^T)^{L-1-j}: the adjoint of the
/// Frechet derivative of A_hat -> A_hat^L.
Matrix adjoint_power_map(const Matrix& A_hat, const Matrix& X, int horizon);

}  // namespace tlh2
