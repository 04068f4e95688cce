#include "tlh2/lti.hpp"

#include "tlh2/random.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlh2 {

double spectral_radius(const Matrix& M) {
    if (M.rows() != M.cols()) {
        throw std::invalid_argument("spectral_radius: matrix must be square");
    }
    if (M.rows() == 0) {
        return 0.0;
    }
    Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

StateSpaceModel::StateSpaceModel(Matrix A, Matrix B, Matrix C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
    if (A_.rows() != A_.cols()) {
        throw std::invalid_argument("StateSpaceModel: A must be square");
    }
    if (A_.rows() < 1 || B_.cols() < 1 || C_.rows() < 1) {
        throw std::invalid_argument("StateSpaceModel: n, m, p must be positive");
    }
    if (B_.rows() != A_.rows() || C_.cols() != A_.rows()) {
        throw std::invalid_argument("StateSpaceModel: B must be n x m and C p x n");
    }
}

ImpulseData::ImpulseData(std::vector<Matrix> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) {
        throw std::invalid_argument("ImpulseData: horizon must be >= 1");
    }
    const auto rows = samples_.front().rows();
    const auto cols = samples_.front().cols();
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("ImpulseData: samples must be p x m with p, m >= 1");
    }
    for (const auto& h : samples_) {
        if (h.rows() != rows || h.cols() != cols) {
            throw std::invalid_argument("ImpulseData: all samples must share the same shape");
        }
    }
}

ReducedModel::ReducedModel(Matrix A_hat, Matrix B_hat, Matrix C_hat)
    : A_(std::move(A_hat)), B_(std::move(B_hat)), C_(std::move(C_hat)) {
    if (A_.rows() != A_.cols()) {
        throw std::invalid_argument("ReducedModel: A_hat must be square");
    }
    if (A_.rows() < 1 || A_.rows() > kMaxOrder) {
        throw std::invalid_argument("ReducedModel: order must be in [1, " +
                                    std::to_string(kMaxOrder) + "]");
    }
    if (B_.rows() != A_.rows() || C_.cols() != A_.rows() || B_.cols() < 1 || C_.rows() < 1) {
        throw std::invalid_argument("ReducedModel: B_hat must be r x m and C_hat p x r");
    }
}

namespace {

// h[k] = C V_k with V_0 = B, V_{k+1} = A V_k.
std::vector<Matrix> markov_parameters(const Matrix& A, const Matrix& B, const Matrix& C,
                                      int horizon) {
    if (horizon < 1) {
        throw std::invalid_argument("impulse_response: horizon must be >= 1");
    }
    std::vector<Matrix> samples;
    samples.reserve(static_cast<std::size_t>(horizon));
    Matrix v = B;
    for (int k = 0; k < horizon; ++k) {
        samples.push_back(C * v);
        if (k + 1 < horizon) {
            v = A * v;
        }
    }
    return samples;
}

}  // namespace

ImpulseData impulse_response(const StateSpaceModel& model, int horizon) {
    return ImpulseData(markov_parameters(model.A(), model.B(), model.C(), horizon));
}

ImpulseData impulse_response(const ReducedModel& rom, int horizon) {
    return ImpulseData(markov_parameters(rom.A(), rom.B(), rom.C(), horizon));
}

std::vector<Vector> simulate(const StateSpaceModel& model, const std::vector<Vector>& input) {
    std::vector<Vector> output;
    output.reserve(input.size());
    Vector x = Vector::Zero(model.n());
    for (const auto& u : input) {
        if (u.size() != model.m()) {
            throw std::invalid_argument("simulate: input dimension mismatch");
        }
        x = model.A() * x + model.B() * u;  // x_{k+1}; y_{k+1} = C x_{k+1}
        output.push_back(model.C() * x);
    }
    return output;
}

std::vector<Vector> simulate(const ImpulseData& data, const std::vector<Vector>& input) {
    const int L = static_cast<int>(input.size());
    if (L > data.horizon()) {
        throw std::invalid_argument("simulate: input longer than stored impulse data");
    }
    std::vector<Vector> output;
    output.reserve(input.size());
    for (int k = 0; k < L; ++k) {
        if (input[static_cast<std::size_t>(k)].size() != data.m()) {
            throw std::invalid_argument("simulate: input dimension mismatch");
        }
        Vector y = Vector::Zero(data.p());
        for (int j = 0; j <= k; ++j) {
            y += data[j] * input[static_cast<std::size_t>(k - j)];
        }
        output.push_back(std::move(y));
    }
    return output;
}

double tl_h2_norm_sq(const ImpulseData& data) {
    double total = 0.0;
    for (const auto& h : data.samples()) {
        total += h.squaredNorm();
    }
    return total;
}

double tl_h2_norm(const ImpulseData& data) { return std::sqrt(tl_h2_norm_sq(data)); }

double tl_h2_error_sq(const ImpulseData& data, const ReducedModel& rom) {
    if (rom.p() != data.p() || rom.m() != data.m()) {
        throw std::invalid_argument("tl_h2_error: data/rom dimension mismatch");
    }
    double total = 0.0;
    Matrix v = rom.B();
    const int L = data.horizon();
    for (int k = 0; k < L; ++k) {
        total += (data[k] - rom.C() * v).squaredNorm();
        if (k + 1 < L) {
            v = rom.A() * v;
        }
    }
    return total;
}

double tl_h2_error(const ImpulseData& data, const ReducedModel& rom) {
    return std::sqrt(tl_h2_error_sq(data, rom));
}

std::pair<double, double> output_error_bound_check(const StateSpaceModel& model,
                                                   const ReducedModel& rom,
                                                   const std::vector<Vector>& input) {
    if (input.empty()) {
        throw std::invalid_argument("output_error_bound_check: empty input");
    }
    const int L = static_cast<int>(input.size());
    const auto y = simulate(model, input);
    const StateSpaceModel rom_as_model(rom.A(), rom.B(), rom.C());
    const auto y_hat = simulate(rom_as_model, input);

    double lhs = 0.0;
    for (int k = 0; k < L; ++k) {
        lhs = std::max(lhs, (y[static_cast<std::size_t>(k)] - y_hat[static_cast<std::size_t>(k)]).norm());
    }
    double u_energy = 0.0;
    for (const auto& u : input) {
        u_energy += u.squaredNorm();
    }
    const double rhs = tl_h2_error(impulse_response(model, L), rom) * std::sqrt(u_energy);
    return {lhs, rhs};
}

StateSpaceModel random_stable_system(int n, int m, int p, double rho_max, std::uint64_t seed) {
    if (!(rho_max > 0.0) || !(rho_max < 1.0)) {
        throw std::invalid_argument("random_stable_system: rho_max must lie in (0, 1)");
    }
    if (n < 1 || m < 1 || p < 1) {
        throw std::invalid_argument("random_stable_system: n, m, p must be positive");
    }
    GaussianStream stream(seed);

    // Block-diagonal core: 2x2 rotation-contractions, one 1x1 block if n is
    // odd. Radii stay strictly below rho_max so eigensolve rounding cannot
    // push the measured radius over it.
    Matrix D = Matrix::Zero(n, n);
    const double headroom = 1.0 - 1e-9;
    int i = 0;
    for (; i + 1 < n; i += 2) {
        const double angle = 2.0 * std::numbers::pi * stream.uniform();
        const double radius = rho_max * (0.5 + 0.5 * stream.uniform()) * headroom;
        const double c = radius * std::cos(angle);
        const double s = radius * std::sin(angle);
        D(i, i) = c;
        D(i, i + 1) = -s;
        D(i + 1, i) = s;
        D(i + 1, i + 1) = c;
    }
    if (i < n) {
        D(i, i) = rho_max * (2.0 * stream.uniform() - 1.0) * headroom;
    }

    Matrix G(n, n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            G(row, col) = stream.normal();
        }
    }
    const Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
    Matrix A = Q * D * Q.transpose();

    Matrix B(n, m);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < m; ++col) {
            B(row, col) = stream.normal();
        }
    }
    Matrix C(p, n);
    for (int row = 0; row < p; ++row) {
        for (int col = 0; col < n; ++col) {
            C(row, col) = stream.normal();
        }
    }
    return StateSpaceModel(std::move(A), std::move(B), std::move(C));
}

ImpulseData add_noise(const ImpulseData& data, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) {
        throw std::invalid_argument("add_noise: sigma must be >= 0");
    }
    if (sigma == 0.0) {
        return data;
    }
    GaussianStream stream(seed);
    std::vector<Matrix> noisy;
    noisy.reserve(data.samples().size());
    for (const auto& h : data.samples()) {
        Matrix sample = h;
        for (int row = 0; row < sample.rows(); ++row) {
            for (int col = 0; col < sample.cols(); ++col) {
                sample(row, col) += sigma * stream.normal();
            }
        }
        noisy.push_back(std::move(sample));
    }
    return ImpulseData(std::move(noisy));
}

}  // namespace tlh2
