#include "tlh2/objective.hpp"

#include <stdexcept>

namespace tlh2 {

FiniteGramians finite_gramians(const ReducedModel& rom, int horizon) {
    if (horizon < 1) {
        throw std::invalid_argument("finite_gramians: horizon must be >= 1");
    }
    const int r = rom.r();
    Matrix P = Matrix::Zero(r, r);
    Matrix Q = Matrix::Zero(r, r);
    Matrix v = rom.B();              // A_hat^k B_hat
    Matrix w = rom.C().transpose();  // (A_hat^T)^k C_hat^T
    for (int k = 0; k < horizon; ++k) {
        P.noalias() += v * v.transpose();
        Q.noalias() += w * w.transpose();
        if (k + 1 < horizon) {
            v = rom.A() * v;
            w = rom.A().transpose() * w;
        }
    }
    P = 0.5 * (P + P.transpose()).eval();
    Q = 0.5 * (Q + Q.transpose()).eval();
    return {std::move(P), std::move(Q)};
}

DataCrossTerms data_cross_terms(const ImpulseData& data, const ReducedModel& rom) {
    if (rom.p() != data.p() || rom.m() != data.m()) {
        throw std::invalid_argument("data_cross_terms: data/rom dimension mismatch");
    }
    Matrix Z1 = Matrix::Zero(data.p(), rom.r());
    Matrix Z2 = Matrix::Zero(data.m(), rom.r());
    Matrix t = rom.B().transpose();  // B_hat^T (A_hat^T)^k
    Matrix u = rom.C();              // C_hat A_hat^k
    const int L = data.horizon();
    for (int k = 0; k < L; ++k) {
        Z1.noalias() += data[k] * t;
        Z2.noalias() -= data[k].transpose() * u;
        if (k + 1 < L) {
            t = t * rom.A().transpose();
            u = u * rom.A();
        }
    }
    return {std::move(Z1), std::move(Z2)};
}

namespace {

double objective_c_form(const ImpulseData& data, const ReducedModel& rom) {
    const int L = data.horizon();
    Matrix P = Matrix::Zero(rom.r(), rom.r());
    Matrix Z1 = Matrix::Zero(data.p(), rom.r());
    Matrix v = rom.B();
    Matrix t = rom.B().transpose();
    for (int k = 0; k < L; ++k) {
        P.noalias() += v * v.transpose();
        Z1.noalias() += data[k] * t;
        if (k + 1 < L) {
            v = rom.A() * v;
            t = t * rom.A().transpose();
        }
    }
    P = 0.5 * (P + P.transpose()).eval();
    return (rom.C() * P * rom.C().transpose()).trace() - 2.0 * (Z1 * rom.C().transpose()).trace();
}

double objective_b_form(const ImpulseData& data, const ReducedModel& rom) {
    const int L = data.horizon();
    Matrix Q = Matrix::Zero(rom.r(), rom.r());
    Matrix Z2 = Matrix::Zero(data.m(), rom.r());
    Matrix w = rom.C().transpose();
    Matrix u = rom.C();
    for (int k = 0; k < L; ++k) {
        Q.noalias() += w * w.transpose();
        Z2.noalias() -= data[k].transpose() * u;
        if (k + 1 < L) {
            w = rom.A().transpose() * w;
            u = u * rom.A();
        }
    }
    Q = 0.5 * (Q + Q.transpose()).eval();
    return (rom.B().transpose() * Q * rom.B()).trace() + 2.0 * (Z2 * rom.B()).trace();
}

}  // namespace

double objective_value(const ImpulseData& data, const ReducedModel& rom, ObjectiveForm form) {
    if (rom.p() != data.p() || rom.m() != data.m()) {
        throw std::invalid_argument("objective_value: data/rom dimension mismatch");
    }
    if (form == ObjectiveForm::Auto) {
        form = data.p() > data.m() ? ObjectiveForm::C : ObjectiveForm::B;
    }
    return form == ObjectiveForm::C ? objective_c_form(data, rom) : objective_b_form(data, rom);
}

}  // namespace tlh2
