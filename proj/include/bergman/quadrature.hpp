#pragma once

#include <functional>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_panels = 4000;   // G7K15 applications, shared across all pieces of a run
    double tail_cut = 64.0;  // split point between the direct core and the transformed tail
    int growth_window = 6;   // doubling steps used by the divergence probe

    void validate() const;  // throws std::invalid_argument
};

enum class Verdict { Converged, Diverges, Inconclusive };

const char* to_string(Verdict v);

struct QuadratureOutcome {
    double value = 0.0;           // meaningful only when verdict == Converged
    double error_estimate = 0.0;
    int panels_used = 0;
    Verdict verdict = Verdict::Inconclusive;
    double growth_exponent = 0.0;  // fitted log-log slope of partial-integral increments
                                   // (set when verdict == Diverges)

    bool within_tolerance(const QuadratureConfig& cfg) const;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss(7)/Kronrod(15) on a finite interval.
QuadratureOutcome integrate_interval(const Integrand& f, double lo, double hi,
                                     const QuadratureConfig& cfg = {});

// Integral over [0, inf): adaptive panels on [0, tail_cut], then the
// substitution rho = tail_cut + t/(1-t) on the tail, both refined against one
// combined error budget.  Throws NonFiniteIntegrand if f itself evaluates
// non-finite; a divergent integrand ends Inconclusive with the budget spent.
QuadratureOutcome integrate_half_line(const Integrand& f, const QuadratureConfig& cfg = {});

// Divergence probe for integrands that are eventually nonnegative.  Computes
// partial integrals I(R) at R = tail_cut * 2^j, fits the log-log slope of the
// increments I(2R) - I(R), and classifies:
//   slope > -0.05          -> Diverges (growth_exponent = slope)
//   slope <= -0.05         -> remainder integrated with an exponential
//                             substitution; Converged if tolerance is met
//   too few usable points  -> Inconclusive
QuadratureOutcome probe_divergence(const Integrand& f, const QuadratureConfig& cfg = {});

}  // namespace bergman
