#include "tlh2/gradients.hpp"

#include "tlh2/errors.hpp"
#include "tlh2/objective.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tlh2 {

namespace {

constexpr double kRadiusMargin = 1e-8;
constexpr double kResidualTol = 1e-10;

Matrix kron(const Matrix& X, const Matrix& Y) {
    Matrix K(X.rows() * Y.rows(), X.cols() * Y.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            K.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y;
        }
    }
    return K;
}

// Solves X = G X F^T + rhs via (I - F (x) G) vec(X) = vec(rhs).
Matrix solve_displacement(const Matrix& G, const Matrix& F, const Matrix& rhs,
                          const char* label) {
    const Eigen::Index rows = G.rows();
    const Eigen::Index cols = F.rows();
    if (rhs.rows() != rows || rhs.cols() != cols) {
        throw std::invalid_argument(std::string(label) + ": rhs shape mismatch");
    }
    const Eigen::Index dim = rows * cols;
    Matrix system = Matrix::Identity(dim, dim) - kron(F, G);
    Eigen::FullPivLU<Matrix> lu(system);
    if (!lu.isInvertible()) {
        throw SolveFailure(std::string(label) + ": singular Kronecker system");
    }
    const Eigen::Map<const Vector> rhs_vec(rhs.data(), dim);
    Vector x_vec = lu.solve(rhs_vec);
    Matrix X = Eigen::Map<const Matrix>(x_vec.data(), rows, cols);

    const double residual = (G * X * F.transpose() + rhs - X).norm();
    if (residual > kResidualTol * std::max(X.norm(), 1.0)) {
        throw SolveFailure(std::string(label) + ": residual " + std::to_string(residual) +
                           " exceeds tolerance");
    }
    return X;
}

}  // namespace

GradientTriple::GradientTriple(Matrix dA_, Matrix dB_, Matrix dC_)
    : dA(std::move(dA_)), dB(std::move(dB_)), dC(std::move(dC_)) {
    norm = std::sqrt(dA.squaredNorm() + dB.squaredNorm() + dC.squaredNorm());
}

Matrix solve_stein(const Matrix& A_hat, const Matrix& rhs) {
    if (A_hat.rows() != A_hat.cols()) {
        throw std::invalid_argument("solve_stein: A_hat must be square");
    }
    return solve_displacement(A_hat, A_hat, rhs, "solve_stein");
}

Matrix solve_sylvester(const Matrix& A, const Matrix& A_hat, const Matrix& rhs) {
    if (A.rows() != A.cols() || A_hat.rows() != A_hat.cols()) {
        throw std::invalid_argument("solve_sylvester: A and A_hat must be square");
    }
    return solve_displacement(A, A_hat, rhs, "solve_sylvester");
}

Matrix adjoint_power_map(const Matrix& A_hat, const Matrix& X, int horizon) {
    if (A_hat.rows() != A_hat.cols() || X.rows() != A_hat.rows() || X.cols() != A_hat.cols()) {
        throw std::invalid_argument("adjoint_power_map: shape mismatch");
    }
    if (horizon < 1) {
        throw std::invalid_argument("adjoint_power_map: horizon must be >= 1");
    }
    const Matrix At = A_hat.transpose();
    std::vector<Matrix> powers;  // (A_hat^T)^t, t = 0..L-1
    powers.reserve(static_cast<std::size_t>(horizon));
    powers.push_back(Matrix::Identity(A_hat.rows(), A_hat.cols()));
    for (int t = 1; t < horizon; ++t) {
        powers.push_back(At * powers.back());
    }
    Matrix result = Matrix::Zero(A_hat.rows(), A_hat.cols());
    for (int j = 0; j < horizon; ++j) {
        result.noalias() +=
            powers[static_cast<std::size_t>(j)] * X * powers[static_cast<std::size_t>(horizon - 1 - j)];
    }
    return result;
}

ModelBasedWorkspace model_workspace(const StateSpaceModel& truth, const ReducedModel& rom,
                                    int horizon) {
    if (truth.m() != rom.m() || truth.p() != rom.p()) {
        throw std::invalid_argument("model_workspace: truth/rom dimension mismatch");
    }
    if (horizon < 1) {
        throw std::invalid_argument("model_workspace: horizon must be >= 1");
    }
    const double rho_full = spectral_radius(truth.A());
    const double rho_red = spectral_radius(rom.A());
    if (rho_red * rho_red >= 1.0 - kRadiusMargin || rho_full * rho_red >= 1.0 - kRadiusMargin) {
        throw SolveFailure("model_workspace: spectral radii rho(A)=" + std::to_string(rho_full) +
                           ", rho(A_hat)=" + std::to_string(rho_red) +
                           " violate the solvability precondition");
    }

    ModelBasedWorkspace ws;
    ws.P = solve_stein(rom.A(), rom.B() * rom.B().transpose());
    ws.R = solve_sylvester(truth.A(), rom.A(), truth.B() * rom.B().transpose());

    const int n = truth.n();
    const int r = rom.r();
    ws.R_L = Matrix::Zero(n, r);
    ws.S_L = Matrix::Zero(n, r);
    Matrix v = truth.B();               // A^k B
    Matrix t = rom.B().transpose();     // B_hat^T (A_hat^T)^k
    Matrix w = truth.C().transpose();   // (A^T)^k C^T
    Matrix u = rom.C();                 // C_hat A_hat^k
    for (int k = 0; k < horizon; ++k) {
        ws.R_L.noalias() += v * t;
        ws.S_L.noalias() -= w * u;
        if (k + 1 < horizon) {
            v = truth.A() * v;
            t = t * rom.A().transpose();
            w = truth.A().transpose() * w;
            u = u * rom.A();
        }
    }

    // After the loop, w = (A^T)^{L-1} C^T and u = C_hat A_hat^{L-1}; one more
    // step gives the L-th powers needed by the endpoint matrix.
    const Matrix AtL_Ct = truth.A().transpose() * w;            // (A^T)^L C^T
    const Matrix AhatTL_ChatT = (u * rom.A()).transpose();      // (A_hat^T)^L C_hat^T
    ws.M = ws.R.transpose() * AtL_Ct * rom.C() - ws.P * AhatTL_ChatT * rom.C();
    return ws;
}

GradientTriple gradient_model(const StateSpaceModel& truth, const ReducedModel& rom,
                              int horizon) {
    const ModelBasedWorkspace ws = model_workspace(truth, rom, horizon);
    const FiniteGramians gramians = finite_gramians(rom, horizon);

    Matrix dA = 2.0 * (gramians.Q * rom.A() * ws.P + ws.S_L.transpose() * truth.A() * ws.R +
                       adjoint_power_map(rom.A(), ws.M, horizon));
    Matrix dB = 2.0 * (gramians.Q * rom.B() + ws.S_L.transpose() * truth.B());
    Matrix dC = 2.0 * (rom.C() * gramians.P - truth.C() * ws.R_L);
    return GradientTriple(std::move(dA), std::move(dB), std::move(dC));
}

GradientTriple gradient_data(const ImpulseData& data, const ReducedModel& rom) {
    if (rom.p() != data.p() || rom.m() != data.m()) {
        throw std::invalid_argument("gradient_data: data/rom dimension mismatch");
    }
    const int L = data.horizon();
    const int r = rom.r();

    const FiniteGramians gramians = finite_gramians(rom, L);
    const DataCrossTerms cross = data_cross_terms(data, rom);

    Matrix dC = 2.0 * (rom.C() * gramians.P - cross.Z1);
    Matrix dB = 2.0 * (gramians.Q * rom.B() + cross.Z2.transpose());

    Matrix dA = Matrix::Zero(r, r);
    if (L > 1) {
        // F_k = C_hat^T E_k with E_k = C_hat A_hat^k B_hat - h[k]; F_0 is
        // never used (the dA sum starts at k = 1).
        std::vector<Matrix> F(static_cast<std::size_t>(L));
        Matrix v = rom.B();
        for (int k = 0; k < L; ++k) {
            F[static_cast<std::size_t>(k)] = rom.C().transpose() * (rom.C() * v - data[k]);
            if (k + 1 < L) {
                v = rom.A() * v;
            }
        }
        // G_i = sum_{k=i+1}^{L-1} (A_hat^T)^{k-1-i} F_k, built backward.
        std::vector<Matrix> G(static_cast<std::size_t>(L - 1));
        G[static_cast<std::size_t>(L - 2)] = F[static_cast<std::size_t>(L - 1)];
        for (int i = L - 3; i >= 0; --i) {
            G[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i + 1)] +
                                             rom.A().transpose() * G[static_cast<std::size_t>(i + 1)];
        }
        // dA = 2 sum_i G_i B_hat^T (A_hat^T)^i with the power built forward.
        Matrix t = rom.B().transpose();  // B_hat^T (A_hat^T)^i
        for (int i = 0; i <= L - 2; ++i) {
            dA.noalias() += 2.0 * (G[static_cast<std::size_t>(i)] * t);
            if (i + 1 <= L - 2) {
                t = t * rom.A().transpose();
            }
        }
    }
    return GradientTriple(std::move(dA), std::move(dB), std::move(dC));
}

}  // namespace tlh2
