#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace tlh2 {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Max|eigenvalue| of a square matrix via a dense eigensolve.
/// Throws std::invalid_argument on non-square input.
double spectral_radius(const Matrix& M);

/**
 * Full-order discrete-time LTI system
 *
 *   x_{k+1} = A x_k + B u_k,   y_k = C x_k,
 *
 * with A: n x n, B: n x m, C: p x n. Stability is not required; query
 * spectral_radius(model.A()) when it matters. Immutable after construction.
 */
class StateSpaceModel {
public:
    StateSpaceModel(Matrix A, Matrix B, Matrix C);

    const Matrix& A() const { return A_; }
    const Matrix& B() const { return B_; }
    const Matrix& C() const { return C_; }
    int n() const { return static_cast<int>(A_.rows()); }
    int m() const { return static_cast<int>(B_.cols()); }
    int p() const { return static_cast<int>(C_.rows()); }

private:
    Matrix A_, B_, C_;
};

/**
 * Ordered impulse-response samples h[0..L-1], each a p x m matrix
 * (h[k] = C A^k B when generated from a model). The only input the
 * data-driven pipeline ever sees. Immutable after construction.
 */
class ImpulseData {
public:
    explicit ImpulseData(std::vector<Matrix> samples);

    const Matrix& operator[](int k) const { return samples_[static_cast<std::size_t>(k)]; }
    const std::vector<Matrix>& samples() const { return samples_; }
    int horizon() const { return static_cast<int>(samples_.size()); }
    int p() const { return static_cast<int>(samples_.front().rows()); }
    int m() const { return static_cast<int>(samples_.front().cols()); }

private:
    std::vector<Matrix> samples_;
};

/**
 * Reduced-order candidate (A_hat, B_hat, C_hat) of order r. The feasible
 * set is all of R^{r x r} x R^{r x m} x R^{p x r}; stability is enforced
 * only by the stability-checked optimizer variant.
 */
class ReducedModel {
public:
    static constexpr int kMaxOrder = 64;

    ReducedModel(Matrix A_hat, Matrix B_hat, Matrix C_hat);

    const Matrix& A() const { return A_; }
    const Matrix& B() const { return B_; }
    const Matrix& C() const { return C_; }
    int r() const { return static_cast<int>(A_.rows()); }
    int m() const { return static_cast<int>(B_.cols()); }
    int p() const { return static_cast<int>(C_.rows()); }

private:
    Matrix A_, B_, C_;
};

/// Markov parameters h[k] = C A^k B, k = 0..horizon-1, by forward recursion
/// on B-propagated blocks (A^k is never formed).
ImpulseData impulse_response(const StateSpaceModel& model, int horizon);
ImpulseData impulse_response(const ReducedModel& rom, int horizon);

/// Outputs [y_1 .. y_L] for inputs [u_0 .. u_{L-1}] from x_0 = 0, via the
/// state recursion. y_{k+1} = sum_{j<=k} h[j] u_{k-j}.
std::vector<Vector> simulate(const StateSpaceModel& model, const std::vector<Vector>& input);

/// Same outputs computed by explicit convolution with stored impulse data.
std::vector<Vector> simulate(const ImpulseData& data, const std::vector<Vector>& input);

/// sqrt(sum_k ||h[k]||_F^2) over the stored horizon.
double tl_h2_norm(const ImpulseData& data);
double tl_h2_norm_sq(const ImpulseData& data);

/// sqrt(sum_k ||h[k] - C_hat A_hat^k B_hat||_F^2) over the data's horizon.
double tl_h2_error(const ImpulseData& data, const ReducedModel& rom);
double tl_h2_error_sq(const ImpulseData& data, const ReducedModel& rom);

/// Evaluates both sides of the input-output error bound
///   ||y - y_hat||_linf  <=  ||H - H_hat||_h2 * ||u||_l2
/// over the input's horizon; returns (lhs, rhs).
std::pair<double, double> output_error_bound_check(const StateSpaceModel& model,
                                                   const ReducedModel& rom,
                                                   const std::vector<Vector>& input);

/**
 * Random system with rho(A) <= rho_max, deterministic in seed.
 *
 * A = Q D Q^T with D block-diagonal in random 2x2 rotation-contractions
 * (plus a 1x1 block when n is odd) and Q orthogonal from a Gaussian QR;
 * B and C are standard normal. Draw order: per-block (angle, radius),
 * then Q's seed matrix, B, C, each row-major.
 */
StateSpaceModel random_stable_system(int n, int m, int p, double rho_max, std::uint64_t seed);

/// h[k] + eta_k with i.i.d. N(0, sigma^2) entries, drawn row-major over
/// (k, output, input). sigma = 0 returns the data unchanged.
ImpulseData add_noise(const ImpulseData& data, double sigma, std::uint64_t seed);

}  // namespace tlh2
