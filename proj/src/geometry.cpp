#include "bergman/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

void require_point(const KernelForm& K, const Point& z, const char* who) {
    if (static_cast<int>(z.size()) != K.n) {
        throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
    }
}

// dK/dz_i = c_i conj(z_i) on the diagonal.
std::vector<Complex> holo_gradient(const KernelForm& K, const Point& z) {
    std::vector<Complex> v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) v[i] = K.c(static_cast<int>(i) + 1) * std::conj(z[i]);
    return v;
}

std::vector<Complex> antiholo_gradient(const KernelForm& K, const Point& z) {
    std::vector<Complex> w(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) w[i] = K.c(static_cast<int>(i) + 1) * z[i];
    return w;
}

CMatrix metric_matrix(const KernelForm& K, const Point& z) {
    const int n = K.n;
    const double Kz = kernel_diag(K, z);
    const auto v = holo_gradient(K, z);
    const auto w = antiholo_gradient(K, z);
    CMatrix g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex e = -v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] / (Kz * Kz);
            if (i == j) e += K.c(i + 1) / Kz;
            g(i, j) = e;
        }
    }
    return g;
}

}  // namespace

KernelForm KernelForm::from_coefficients(const KernelCoefficients& coeffs) {
    if (coeffs.c.size() < 2) throw std::invalid_argument("KernelForm: need at least c_0, c_1");
    for (double ck : coeffs.c) {
        if (!(ck > 0.0)) throw std::invalid_argument("KernelForm: coefficients must be positive");
    }
    KernelForm K;
    K.coeffs = coeffs;
    K.n = static_cast<int>(coeffs.c.size()) - 1;
    return K;
}

KernelForm KernelForm::make(int n, std::vector<double> c) {
    if (static_cast<int>(c.size()) != n + 1) {
        throw std::invalid_argument("KernelForm::make: need n+1 coefficients");
    }
    KernelCoefficients coeffs;
    coeffs.c = std::move(c);
    coeffs.err.assign(static_cast<std::size_t>(n) + 1, 0.0);
    return from_coefficients(coeffs);
}

Point LinearMap::apply(const Point& z) const {
    return mat_vec(matrix, z);
}

LinearMap LinearMap::diagonal(const std::vector<Complex>& d) {
    CMatrix m(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return LinearMap{m};
}

LinearMap LinearMap::coordinate_permutation(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, perm[static_cast<std::size_t>(i)]) = 1.0;
    return LinearMap{m};
}

LinearMap LinearMap::scaling(int n, double factor) {
    return diagonal(std::vector<Complex>(static_cast<std::size_t>(n), factor));
}

Complex kernel_eval(const KernelForm& K, const Point& z, const Point& w) {
    require_point(K, z, "kernel_eval");
    require_point(K, w, "kernel_eval");
    Complex sum = K.c(0);
    for (int k = 0; k < K.n; ++k) {
        sum += K.c(k + 1) * z[static_cast<std::size_t>(k)] * std::conj(w[static_cast<std::size_t>(k)]);
    }
    return sum;
}

double kernel_diag(const KernelForm& K, const Point& z) {
    require_point(K, z, "kernel_diag");
    double sum = K.c(0);
    for (int k = 0; k < K.n; ++k) sum += K.c(k + 1) * std::norm(z[static_cast<std::size_t>(k)]);
    return sum;
}

HermitianForm metric_at(const KernelForm& K, const Point& z) {
    require_point(K, z, "metric_at");
    return HermitianForm::from_matrix(metric_matrix(K, z));
}

CMatrix t_matrix(const KernelForm& K, const Point& z, const Point& w) {
    require_point(K, z, "t_matrix");
    require_point(K, w, "t_matrix");
    const Complex Kzw = kernel_eval(K, z, w);
    if (Kzw == Complex{}) throw ZeroKernel("t_matrix: kernel vanishes at the given pair");
    const int n = K.n;
    CMatrix t(n);
    for (int i = 0; i < n; ++i) {
        const Complex vi = K.c(i + 1) * std::conj(w[static_cast<std::size_t>(i)]);  // d/dz_i K(z,w)
        for (int j = 0; j < n; ++j) {
            const Complex wj = K.c(j + 1) * z[static_cast<std::size_t>(j)];  // d/dwbar_j K(z,w)
            Complex e = -vi * wj / (Kzw * Kzw);
            if (i == j) e += K.c(i + 1) / Kzw;
            t(i, j) = e;
        }
    }
    return t;
}

CMatrix metric_z_derivative(const KernelForm& K, const Point& z, int k) {
    require_point(K, z, "metric_z_derivative");
    const int n = K.n;
    const double Kz = kernel_diag(K, z);
    const auto v = holo_gradient(K, z);
    const auto w = antiholo_gradient(K, z);
    const double K2 = Kz * Kz;
    const double K3 = K2 * Kz;
    const Complex vk = v[static_cast<std::size_t>(k)];
    CMatrix d(n);
    for (int i = 0; i < n; ++i) {
        const Complex vi = v[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            Complex e = 2.0 * vi * w[static_cast<std::size_t>(j)] * vk / K3;
            if (i == j) e -= K.c(i + 1) * vk / K2;
            if (j == k) e -= vi * K.c(j + 1) / K2;
            d(i, j) = e;
        }
    }
    return d;
}

CMatrix metric_mixed_second(const KernelForm& K, const Point& z, int k, int l) {
    require_point(K, z, "metric_mixed_second");
    const int n = K.n;
    const double Kz = kernel_diag(K, z);
    const auto v = holo_gradient(K, z);
    const auto w = antiholo_gradient(K, z);
    const double K2 = Kz * Kz;
    const double K3 = K2 * Kz;
    const double K4 = K2 * K2;
    const Complex vk = v[static_cast<std::size_t>(k)];
    const Complex wl = w[static_cast<std::size_t>(l)];
    CMatrix h(n);
    for (int i = 0; i < n; ++i) {
        const Complex vi = v[static_cast<std::size_t>(i)];
        const double ci = K.c(i + 1);
        for (int j = 0; j < n; ++j) {
            const Complex wj = w[static_cast<std::size_t>(j)];
            const double cj = K.c(j + 1);
            Complex e = -6.0 * vi * wj * vk * wl / K4;
            if (i == j) e += 2.0 * ci * vk * wl / K3;
            if (j == k) e += 2.0 * cj * vi * wl / K3;
            if (i == l) e += 2.0 * ci * vk * wj / K3;
            if (k == l) e += 2.0 * K.c(k + 1) * vi * wj / K3;
            if (i == j && k == l) e -= ci * K.c(k + 1) / K2;
            if (i == l && j == k) e -= ci * cj / K2;
            h(i, j) = e;
        }
    }
    return h;
}

double sectional_curvature(const KernelForm& K, const Point& z, const Point& X) {
    require_point(K, z, "sectional_curvature");
    require_point(K, X, "sectional_curvature");
    const int n = K.n;

    const HermitianForm g = metric_at(K, z);
    Complex den_c = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            den_c += g.m(i, j) * X[static_cast<std::size_t>(i)] * std::conj(X[static_cast<std::size_t>(j)]);
        }
    }
    const double den = den_c.real();
    if (!(den * den > 1e-280)) {
        throw DegenerateDirection("sectional_curvature: direction too small");
    }

    const CMatrix ginv = inverse(g.m);
    std::vector<CMatrix> dg;
    dg.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) dg.push_back(metric_z_derivative(K, z, k));

    Complex num = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const CMatrix hess = metric_mixed_second(K, z, k, l);
            const CMatrix corr = dg[static_cast<std::size_t>(k)] * ginv *
                                 dg[static_cast<std::size_t>(l)].adjoint();
            Complex inner = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    inner += (-hess(i, j) + corr(i, j)) * X[static_cast<std::size_t>(i)] *
                             std::conj(X[static_cast<std::size_t>(j)]);
                }
            }
            num += inner * X[static_cast<std::size_t>(k)] * std::conj(X[static_cast<std::size_t>(l)]);
        }
    }
    return num.real() / (den * den);
}

LinearMap rescale_to_fubini_study(const KernelForm& K) {
    std::vector<Complex> d(static_cast<std::size_t>(K.n));
    for (int k = 0; k < K.n; ++k) d[static_cast<std::size_t>(k)] = std::sqrt(K.c(k + 1) / K.c(0));
    return LinearMap::diagonal(d);
}

double b_function(const KernelForm& K, const Point& z) {
    require_point(K, z, "b_function");
    const HermitianForm t = metric_at(K, z);  // T(z,z) is the metric
    return det(t.m).real() / kernel_diag(K, z);
}

double b_function_closed_form(const KernelForm& K, const Point& z) {
    require_point(K, z, "b_function_closed_form");
    double prod = 1.0;
    for (int j = 0; j <= K.n; ++j) prod *= K.c(j);
    return prod / std::pow(kernel_diag(K, z), K.n + 2);
}

double TransformationLawReport::max_deviation() const {
    return std::max(max_kernel_dev, std::max(max_t_dev, max_b_dev));
}

TransformationLawReport check_transformation_law(const KernelForm& K, const LinearMap& F,
                                                 const std::vector<Point>& samples) {
    TransformationLawReport report;
    if (samples.empty()) return report;

    const Complex detJ = F.jacobian_det();
    const CMatrix J = F.matrix;
    const CMatrix Jbar_t = J.adjoint();  // conj(J)^T

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Point& z = samples[i];
        const Point& w = samples[(i + 1) % samples.size()];
        const Point fz = F.apply(z);
        const Point fw = F.apply(w);

        // K(z,w) = conj(det J) K(Fz,Fw) det J for a linear self-map.
        const Complex lhs_k = kernel_eval(K, z, w);
        const Complex rhs_k = std::conj(detJ) * kernel_eval(K, fz, fw) * detJ;
        report.max_kernel_dev =
            std::max(report.max_kernel_dev, std::abs(lhs_k - rhs_k) / std::abs(lhs_k));

        // T(z,w) = conj(J^T) T(Fz,Fw) J in the row-j = wbar, col-i = z layout;
        // our t_matrix stores the transpose of that layout.
        const CMatrix lhs_t = t_matrix(K, z, w).transpose();
        const CMatrix rhs_t = Jbar_t * t_matrix(K, fz, fw).transpose() * J;
        const double scale = std::max(lhs_t.max_abs(), 1e-300);
        report.max_t_dev = std::max(report.max_t_dev, (lhs_t - rhs_t).max_abs() / scale);

        const double bz = b_function(K, z);
        const double bfz = b_function(K, fz);
        report.max_b_dev = std::max(report.max_b_dev, std::fabs(bz - bfz) / std::fabs(bz));

        ++report.pairs_checked;
    }
    return report;
}

CartanReport cartan_conditions(const KernelForm& K, const std::vector<Point>& samples) {
    CartanReport report;
    const Point origin(static_cast<std::size_t>(K.n), Complex{});
    const CMatrix t0 = t_matrix(K, origin, origin);
    report.min_eigenvalue = HermitianForm::from_matrix(t0).min_eigenvalue();
    const double t_scale = std::max(t0.max_abs(), 1e-300);

    for (const Point& z : samples) {
        const Complex kz0 = kernel_eval(K, z, origin);
        report.max_kernel_dev =
            std::max(report.max_kernel_dev, std::abs(kz0 - Complex(K.c(0))) / K.c(0));
        const CMatrix tz0 = t_matrix(K, z, origin);
        report.max_t_dev = std::max(report.max_t_dev, (tz0 - t0).max_abs() / t_scale);
        ++report.samples_checked;
    }
    return report;
}

}  // namespace bergman
