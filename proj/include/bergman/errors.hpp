#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Thrown when an integrand evaluates to NaN or +-inf at a quadrature node.
struct NonFiniteIntegrand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an adaptive integration ended Inconclusive but a definite
// verdict was required downstream.
struct PanelBudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the numerical convergence verdict contradicts the closed-form
// square-integrability criterion.  Signals a config or implementation bug.
struct VerdictMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when kernel coefficients are requested outside 2/(n-1) < a <= 3/(n-1).
struct OutsideTheoremWindow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the sesqui-holomorphic kernel vanishes at an off-diagonal pair.
struct ZeroKernel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a curvature denominator underflows for a near-zero direction.
struct DegenerateDirection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bergman
