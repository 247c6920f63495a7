#pragma once

#include <string>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

struct MultiIndex {
    std::vector<int> p;

    int degree() const;
    std::string str() const;  // "(1,0,2)"

    static MultiIndex zero(int n);
    static MultiIndex unit(int n, int k);  // e_{k+1}, i.e. p[k] = 1

    bool operator==(const MultiIndex&) const = default;
};

struct MonomialNorm {
    MultiIndex p;
    double norm_sq = 0.0;  // +inf when the monomial is not square-integrable
    QuadratureOutcome outcome;

    bool finite() const { return outcome.verdict == Verdict::Converged; }
};

struct KernelCoefficients {
    std::vector<double> c;    // size n+1: c[0] = 1/vol, c[k] = 1/||z_k||^2
    std::vector<double> err;  // first-order propagated quadrature errors

    int dimension() const { return static_cast<int>(c.size()) - 1; }
};

// Exact finiteness criterion |p| < (n-1) a - 1, compared as |p|+1 < (n-1) a.
// Uses integer arithmetic when the spec carries an exact rational exponent;
// otherwise plain double comparison with no epsilon slack.
bool is_square_integrable(const DomainSpec& spec, const MultiIndex& p);
bool degree_square_integrable(const DomainSpec& spec, int degree);

// Closed-form dimension: 0 for a <= 1/(n-1), else binom(n+k, k) on the case
// window (k+1)/(n-1) < a <= (k+2)/(n-1).
long long bergman_dimension(const DomainSpec& spec);

// All square-integrable monomial exponents in graded lexicographic order.
std::vector<MultiIndex> enumerate_basis(const DomainSpec& spec);

// The reduced radial profile prod_{k<n} f_{p_k}(rho) * rho^{p_n}; the squared
// monomial norm is pi^n times its half-line integral.
Integrand monomial_integrand(const DomainSpec& spec, const MultiIndex& p);

// Computes ||z^p||^2, dispatching to integrate_half_line or probe_divergence
// according to the closed-form prediction.  Throws VerdictMismatch if the
// quadrature verdict contradicts the prediction, PanelBudgetExhausted on an
// Inconclusive outcome.
MonomialNorm monomial_norm_sq(const DomainSpec& spec, const MultiIndex& p,
                              const QuadratureConfig& cfg = {});

// True iff 2/(n-1) < a <= 3/(n-1), the window where the kernel comes from the
// basis {1, z_1, ..., z_n}.
bool in_kernel_window(const DomainSpec& spec);

// c_0 = 1/||1||^2 and c_k = 1/||z_k||^2 with first-order error propagation.
// Throws OutsideTheoremWindow when the window precondition fails.
KernelCoefficients kernel_coefficients(const DomainSpec& spec, const QuadratureConfig& cfg = {});

// Norms for every multi-index of degree <= max_degree (graded-lex order).
// The parallel path distributes indices over OpenMP threads; results are
// identical to the serial path.
std::vector<MonomialNorm> classify_monomials(const DomainSpec& spec, int max_degree,
                                             const QuadratureConfig& cfg = {},
                                             bool parallel = true);

// Multi-indices of fixed degree / up to a degree, graded-lex.
std::vector<MultiIndex> indices_of_degree(int n, int degree);
std::vector<MultiIndex> indices_up_to_degree(int n, int max_degree);

}  // namespace bergman
