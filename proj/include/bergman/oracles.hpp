#pragma once

#include <cstdint>
#include <functional>

#include "bergman/geometry.hpp"

namespace bergman {

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    long long samples = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of the truncated moment
//   integral of |z^p|^2 over {z in domain : |z_n|^2 < radial_bound},
// sampling rho = |z_n|^2 uniformly and each |z_k|^2 uniformly on its slice,
// weighted by pi^n * radial_bound * prod(slice lengths).  Deterministic per
// seed; the parallel path reduces fixed-size blocks in a fixed order and is
// bit-identical to the serial reference.
MonteCarloEstimate mc_moment(const DomainSpec& spec, const MultiIndex& p, double radial_bound,
                             long long samples, std::uint64_t seed);
MonteCarloEstimate mc_moment_serial(const DomainSpec& spec, const MultiIndex& p,
                                    double radial_bound, long long samples, std::uint64_t seed);

using LogKernel = std::function<Complex(const Point&, const Point&)>;

// Central-difference approximation of d^2 log K / dz_i dwbar_j with 4-point
// complex stencils and one Richardson step (h and h/2).  Shares no derivative
// code with the geometry module.
CMatrix fd_log_kernel_hessian(const LogKernel& log_kernel, const Point& z, const Point& w,
                              double h = 1e-4);
CMatrix fd_log_kernel_hessian(const KernelForm& K, const Point& z, const Point& w,
                              double h = 1e-4);

using MatrixField = std::function<CMatrix(const Point&)>;

// Wirtinger derivatives of a matrix-valued field by central differences with
// one Richardson step; used to validate the analytic metric derivatives.
CMatrix fd_wirtinger_z(const MatrixField& field, const Point& z, int k, double h = 1e-5);
CMatrix fd_wirtinger_zbar(const MatrixField& field, const Point& z, int l, double h = 1e-5);

// Sectional curvature of an arbitrary closed-form metric field, with every
// derivative taken by finite differences.  Independent of the geometry
// module's analytic path.
double fd_sectional_curvature(const MatrixField& metric_field, const Point& z, const Point& X,
                              double h = 1e-4);

// Reference value of the holomorphic sectional curvature for the potential
// log(1 + sum |z_k|^2), from the hand-derived space-form identity
// R = g (x) g + g (x) g.  Returns 2 for every input, up to rounding.
double fs_reference_curvature(int n, const Point& z, const Point& X);

}  // namespace bergman
