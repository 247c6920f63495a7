#pragma once

#include <vector>

#include "bergman/domain.hpp"
#include "bergman/linalg.hpp"
#include "bergman/space.hpp"

namespace bergman {

// Kernel of the form K(z, w) = c_0 + sum_k c_k z_k conj(w_k), the shape that
// arises when the orthonormal basis is {1, z_1, ..., z_n}.
struct KernelForm {
    KernelCoefficients coeffs;
    int n = 0;

    static KernelForm from_coefficients(const KernelCoefficients& coeffs);
    // Fixture constructor with zero error estimates.
    static KernelForm make(int n, std::vector<double> c);

    double c(int k) const { return coeffs.c[static_cast<std::size_t>(k)]; }
};

struct LinearMap {
    CMatrix matrix;

    Point apply(const Point& z) const;
    Complex jacobian_det() const { return det(matrix); }

    static LinearMap diagonal(const std::vector<Complex>& d);
    // Permutes coordinates: result[i] = z[perm[i]].
    static LinearMap coordinate_permutation(const std::vector<int>& perm);
    static LinearMap scaling(int n, double factor);
};

Complex kernel_eval(const KernelForm& K, const Point& z, const Point& w);
double kernel_diag(const KernelForm& K, const Point& z);  // K(z,z), real and >= c_0

// Bergman metric g_{i \bar j} = d^2 log K(z,z) / dz_i dzbar_j, closed form.
HermitianForm metric_at(const KernelForm& K, const Point& z);

// Entry (i, j) = d^2 log K(z,w) / dz_i dwbar_j.  Hermitian only on the
// diagonal w = z, where it equals the metric.  Throws ZeroKernel when
// K(z,w) = 0.
CMatrix t_matrix(const KernelForm& K, const Point& z, const Point& w);

// Analytic d g / d z_k and d^2 g / dz_k dzbar_l, used by the curvature
// assembly and cross-checked against finite differences in the tests.
CMatrix metric_z_derivative(const KernelForm& K, const Point& z, int k);
CMatrix metric_mixed_second(const KernelForm& K, const Point& z, int k, int l);

// Holomorphic sectional curvature H(z; X) with the convention
//   R_{i jbar k lbar} = -d^2 g_{i jbar}/dz_k dzbar_l
//                       + sum_{p,q} (g^{-1})_{qp} (d_k g)_{iq} conj((d_l g)_{jp})
//   H = R(X, Xbar, X, Xbar) / g(X, Xbar)^2,
// normalized so the Fubini-Study potential log(1 + |z|^2) yields +2 and the
// unit-disk kernel yields -1.  Throws DegenerateDirection when the
// denominator underflows.
double sectional_curvature(const KernelForm& K, const Point& z, const Point& X);

// The diagonal change of variables w_k = sqrt(c_k/c_0) z_k pulling the
// Fubini-Study potential back to log(K/c_0).
LinearMap rescale_to_fubini_study(const KernelForm& K);

// det T(z,z) / K(z,z), and its closed form (prod_j c_j) / K^(n+2).
double b_function(const KernelForm& K, const Point& z);
double b_function_closed_form(const KernelForm& K, const Point& z);

struct TransformationLawReport {
    double max_kernel_dev = 0.0;  // relative
    double max_t_dev = 0.0;       // entrywise, relative to the T scale
    double max_b_dev = 0.0;       // relative
    int pairs_checked = 0;

    double max_deviation() const;
};

// Verifies the kernel, T-matrix, and B-function transformation laws for a
// linear self-map at consecutive sample pairs.  The report carries the max
// deviations; a non-automorphism shows up as a large kernel deviation.
TransformationLawReport check_transformation_law(const KernelForm& K, const LinearMap& F,
                                                 const std::vector<Point>& samples);

struct CartanReport {
    double max_kernel_dev = 0.0;  // max |K(z,0) - c_0| / c_0
    double max_t_dev = 0.0;       // max entrywise |T(z,0) - T(0,0)| / scale
    double min_eigenvalue = 0.0;  // of T(0,0)
    int samples_checked = 0;

    bool passed(double tol = 1e-13) const {
        return max_kernel_dev < tol && max_t_dev < tol && min_eigenvalue > 0.0;
    }
};

// Checks K(z,0) == c_0 and T(z,0) == T(0,0) (positive definite) over the
// samples.  An empty sample list yields a trivially passing report.
CartanReport cartan_conditions(const KernelForm& K, const std::vector<Point>& samples);

}  // namespace bergman
