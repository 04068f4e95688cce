#include "tlh2/optimizer.hpp"

#include "tlh2/errors.hpp"
#include "tlh2/objective.hpp"
#include "tlh2/gradients.hpp"
#include "tlh2/random.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tlh2 {

void OptimizerConfig::validate() const {
    if (!(alpha_init > 0.0)) {
        throw std::invalid_argument("OptimizerConfig: alpha_init must be > 0");
    }
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::invalid_argument("OptimizerConfig: beta must lie in (0, 1)");
    }
    if (!(c1 > 0.0) || !(c1 < 1.0)) {
        throw std::invalid_argument("OptimizerConfig: c1 must lie in (0, 1)");
    }
    if (tol < 0.0) {
        throw std::invalid_argument("OptimizerConfig: tol must be >= 0");
    }
    if (max_iters < 1 || max_backtracks < 1) {
        throw std::invalid_argument("OptimizerConfig: iteration caps must be >= 1");
    }
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::TolReached: return "tol-reached";
        case StopReason::MaxIters: return "max-iters";
        case StopReason::BacktrackExhausted: return "backtrack-exhausted";
    }
    return "unknown";
}

int ConvergenceTrace::descent_steps() const {
    int count = 0;
    for (const auto& rec : iterations) {
        if (rec.step > 0.0) {
            ++count;
        }
    }
    return count;
}

ReducedModel era_init(const ImpulseData& data, int r) {
    const int L = data.horizon();
    if (L < 3) {
        throw std::invalid_argument("era_init: horizon must be >= 3");
    }
    const int p = data.p();
    const int m = data.m();
    const int q = L / 2;      // block rows
    const int s = L - 1 - q;  // block columns; H1 indices stay <= L-1
    if (r < 1 || r > std::min(q * p, s * m)) {
        throw std::invalid_argument("era_init: order must lie in [1, min(q*p, s*m)]");
    }

    Matrix H0(q * p, s * m);
    Matrix H1(q * p, s * m);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < s; ++j) {
            H0.block(i * p, j * m, p, m) = data[i + j];
            H1.block(i * p, j * m, p, m) = data[i + j + 1];
        }
    }

    Eigen::JacobiSVD<Matrix> svd(H0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(r - 1) <= 1e-12 * sv(0)) {
        throw RankDeficient("era_init: sigma_" + std::to_string(r) + " below 1e-12 * sigma_1");
    }

    const Matrix U = svd.matrixU().leftCols(r);
    const Matrix V = svd.matrixV().leftCols(r);
    const Vector sqrt_sigma = sv.head(r).cwiseSqrt();
    const Matrix inv_sqrt = sqrt_sigma.cwiseInverse().asDiagonal();

    Matrix A_hat = inv_sqrt * U.transpose() * H1 * V * inv_sqrt;
    Matrix B_hat = (sqrt_sigma.asDiagonal() * V.transpose()).leftCols(m);
    Matrix C_hat = (U * sqrt_sigma.asDiagonal()).topRows(p);
    return ReducedModel(std::move(A_hat), std::move(B_hat), std::move(C_hat));
}

ReducedModel random_init(const ImpulseData& data, int r, std::uint64_t seed) {
    if (r < 1) {
        throw std::invalid_argument("random_init: order must be >= 1");
    }
    GaussianStream stream(seed);
    Matrix A_hat(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            A_hat(i, j) = stream.normal();
        }
    }
    const double rho = spectral_radius(A_hat);
    if (rho > 0.0) {
        A_hat *= 0.5 / rho;
    }
    Matrix B_hat(r, data.m());
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < data.m(); ++j) {
            B_hat(i, j) = stream.normal();
        }
    }
    Matrix C_hat(data.p(), r);
    for (int i = 0; i < data.p(); ++i) {
        for (int j = 0; j < r; ++j) {
            C_hat(i, j) = stream.normal();
        }
    }
    return ReducedModel(std::move(A_hat), std::move(B_hat), std::move(C_hat));
}

namespace {

std::pair<ReducedModel, ConvergenceTrace> run_descent(const ImpulseData& data,
                                                      const ReducedModel& init,
                                                      const OptimizerConfig& cfg,
                                                      bool stability_checked) {
    cfg.validate();
    if (init.p() != data.p() || init.m() != data.m()) {
        throw std::invalid_argument("minimize: data/init dimension mismatch");
    }
    if (stability_checked && spectral_radius(init.A()) >= 1.0) {
        throw InfeasibleInit("minimize: initial point has rho(A_hat) >= 1");
    }

    const ObjectiveForm form = data.p() > data.m() ? ObjectiveForm::C : ObjectiveForm::B;
    const double data_norm = tl_h2_norm(data);
    const double rel_denominator = data_norm > 0.0 ? data_norm : 1.0;

    using Clock = std::chrono::steady_clock;
    ConvergenceTrace trace;
    ReducedModel current = init;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        const auto iter_start = Clock::now();

        const double f_current = objective_value(data, current, form);
        const GradientTriple grad = gradient_data(data, current);

        IterationRecord rec;
        rec.iter = iter;
        rec.objective = f_current;
        // rel error via the shift identity's error, computed directly
        rec.rel_error = tl_h2_error(data, current) / rel_denominator;
        rec.grad_norm = grad.norm;
        rec.spectral_radius = spectral_radius(current.A());

        auto finish_record = [&](double step, int backtracks) {
            rec.step = step;
            rec.backtracks = backtracks;
            rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - iter_start).count();
            trace.iterations.push_back(rec);
        };

        if (grad.norm < cfg.tol) {
            finish_record(0.0, 0);
            trace.reason = StopReason::TolReached;
            return {std::move(current), std::move(trace)};
        }

        // Backtracking line search; the Armijo decrease uses the square of
        // the recorded norm so trace audits can redo the exact arithmetic.
        const double decrease_rate = cfg.c1 * grad.norm * grad.norm;
        double alpha = cfg.alpha_init;
        bool accepted = false;
        int backtracks = 0;
        while (backtracks < cfg.max_backtracks) {
            ReducedModel trial(current.A() - alpha * grad.dA, current.B() - alpha * grad.dB,
                               current.C() - alpha * grad.dC);
            const double f_trial = objective_value(data, trial, form);
            const bool armijo = f_trial <= f_current - alpha * decrease_rate;
            const bool stable_ok = !stability_checked || spectral_radius(trial.A()) < 1.0;
            if (armijo && stable_ok) {
                current = std::move(trial);
                accepted = true;
                break;
            }
            alpha *= cfg.beta;
            ++backtracks;
        }

        if (!accepted) {
            finish_record(0.0, backtracks);
            trace.reason = StopReason::BacktrackExhausted;
            return {std::move(current), std::move(trace)};
        }
        finish_record(alpha, backtracks);
    }

    trace.reason = StopReason::MaxIters;
    return {std::move(current), std::move(trace)};
}

}  // namespace

std::pair<ReducedModel, ConvergenceTrace> minimize(const ImpulseData& data,
                                                   const ReducedModel& init,
                                                   const OptimizerConfig& cfg) {
    return run_descent(data, init, cfg, cfg.stability_checked);
}

std::pair<ReducedModel, ConvergenceTrace> minimize_stability_checked(const ImpulseData& data,
                                                                     const ReducedModel& init,
                                                                     const OptimizerConfig& cfg) {
    return run_descent(data, init, cfg, true);
}

}  // namespace tlh2
