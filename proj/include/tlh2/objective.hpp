#pragma once

#include "tlh2/lti.hpp"

namespace tlh2 {

/// Finite-horizon reachability/observability Gramians of a reduced model:
///   P = sum_{k<L} A_hat^k B_hat B_hat^T (A_hat^T)^k   (r x r, sym PSD)
///   Q = sum_{k<L} (A_hat^T)^k C_hat^T C_hat A_hat^k   (r x r, sym PSD)
struct FiniteGramians {
    Matrix P;
    Matrix Q;
};

/// Data-side cross terms:
///   Z1 =  sum_k h[k] B_hat^T (A_hat^T)^k   (p x r)
///   Z2 = -sum_k h[k]^T C_hat A_hat^k       (m x r)
struct DataCrossTerms {
    Matrix Z1;
    Matrix Z2;
};

enum class ObjectiveForm {
    C,     ///< tr(C_hat P C_hat^T) - 2 tr(Z1 C_hat^T)
    B,     ///< tr(B_hat^T Q B_hat) + 2 tr(Z2 B_hat)
    Auto,  ///< C when p > m, else B
};

/// Exact finite sums by O(horizon) block recursions, symmetrized after
/// accumulation.
FiniteGramians finite_gramians(const ReducedModel& rom, int horizon);

DataCrossTerms data_cross_terms(const ImpulseData& data, const ReducedModel& rom);

/// The data-driven objective. Both forms are algebraically equal and satisfy
///   objective_value = tl_h2_error(data, rom)^2 - tl_h2_norm(data)^2.
double objective_value(const ImpulseData& data, const ReducedModel& rom,
                       ObjectiveForm form = ObjectiveForm::Auto);

}  // namespace tlh2
