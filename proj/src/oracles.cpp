#include "bergman/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bergman/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bergman {

namespace {

constexpr long long kMcBlock = 1 << 16;

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

MonteCarloEstimate mc_impl(const DomainSpec& spec, const MultiIndex& p, double radial_bound,
                           long long samples, std::uint64_t seed, bool parallel) {
    spec.validate();
    if (static_cast<int>(p.p.size()) != spec.n) {
        throw std::invalid_argument("mc_moment: index dimension mismatch");
    }
    if (samples < 2) throw std::invalid_argument("mc_moment: need at least 2 samples");
    if (!(radial_bound > 0.0)) throw std::invalid_argument("mc_moment: radial_bound must be > 0");

    const int n = spec.n;
    const int pn = p.p[static_cast<std::size_t>(n - 1)];
    const double base_weight = std::pow(std::numbers::pi, n) * radial_bound;

    const long long nblocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<double> block_sum(static_cast<std::size_t>(nblocks), 0.0);
    std::vector<double> block_sumsq(static_cast<std::size_t>(nblocks), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long long b = 0; b < nblocks; ++b) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
        const long long lo = b * kMcBlock;
        const long long hi = std::min(samples, lo + kMcBlock);
        double s = 0.0;
        double s2 = 0.0;
        for (long long i = lo; i < hi; ++i) {
            const double rho = radial_bound * rng.u01();
            const RadialInterval iv = radial_interval(spec, rho);
            const double len = iv.length();
            double x = base_weight * (pn != 0 ? std::pow(rho, pn) : 1.0);
            for (int k = 0; k + 1 < n; ++k) {
                const double u = iv.lo + len * rng.u01();
                const int pk = p.p[static_cast<std::size_t>(k)];
                x *= len * (pk != 0 ? std::pow(u, pk) : 1.0);
            }
            s += x;
            s2 += x * x;
        }
        block_sum[static_cast<std::size_t>(b)] = s;
        block_sumsq[static_cast<std::size_t>(b)] = s2;
    }
    (void)parallel;

    // Fixed-order reduction: identical result for any thread count.
    const double total = kahan_sum(block_sum);
    const double total_sq = kahan_sum(block_sumsq);
    const double mean = total / static_cast<double>(samples);
    const double var =
        std::max(0.0, (total_sq - static_cast<double>(samples) * mean * mean) /
                          static_cast<double>(samples - 1));

    MonteCarloEstimate est;
    est.value = mean;
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

Complex eval_shifted(const LogKernel& log_kernel, const Point& z, const Point& w, int slot,
                     int coord, Complex shift) {
    Point zz = z;
    Point ww = w;
    if (slot == 0) {
        zz[static_cast<std::size_t>(coord)] += shift;
    } else {
        ww[static_cast<std::size_t>(coord)] += shift;
    }
    return log_kernel(zz, ww);
}

// d/dz_i via (d/dx - i d/dy)/2, then d/dwbar_j via (d/du + i d/dv)/2,
// each by central differences: 16 evaluations per entry.
CMatrix fd_hessian_once(const LogKernel& log_kernel, const Point& z, const Point& w, double h) {
    const int n = static_cast<int>(z.size());
    CMatrix out(n);
    for (int i = 0; i < n; ++i) {
        auto dz_i = [&](const Point& ww) -> Complex {
            const Complex px = eval_shifted(log_kernel, z, ww, 0, i, Complex(h, 0.0));
            const Complex mx = eval_shifted(log_kernel, z, ww, 0, i, Complex(-h, 0.0));
            const Complex py = eval_shifted(log_kernel, z, ww, 0, i, Complex(0.0, h));
            const Complex my = eval_shifted(log_kernel, z, ww, 0, i, Complex(0.0, -h));
            return ((px - mx) - Complex(0.0, 1.0) * (py - my)) / (4.0 * h);
        };
        for (int j = 0; j < n; ++j) {
            Point wpu = w, wmu = w, wpv = w, wmv = w;
            wpu[static_cast<std::size_t>(j)] += Complex(h, 0.0);
            wmu[static_cast<std::size_t>(j)] -= Complex(h, 0.0);
            wpv[static_cast<std::size_t>(j)] += Complex(0.0, h);
            wmv[static_cast<std::size_t>(j)] -= Complex(0.0, h);
            const Complex du = (dz_i(wpu) - dz_i(wmu)) / (2.0 * h);
            const Complex dv = (dz_i(wpv) - dz_i(wmv)) / (2.0 * h);
            out(i, j) = (du + Complex(0.0, 1.0) * dv) / 2.0;
        }
    }
    return out;
}

CMatrix richardson(const CMatrix& coarse, const CMatrix& fine) {
    // Central differences are O(h^2): (4 fine - coarse) / 3.
    return (1.0 / 3.0) * (4.0 * fine - coarse);
}

CMatrix fd_matrix_wirtinger(const MatrixField& field, const Point& z, int k, double h,
                            bool bar) {
    auto once = [&](double step) -> CMatrix {
        Point px = z, mx = z, py = z, my = z;
        px[static_cast<std::size_t>(k)] += Complex(step, 0.0);
        mx[static_cast<std::size_t>(k)] -= Complex(step, 0.0);
        py[static_cast<std::size_t>(k)] += Complex(0.0, step);
        my[static_cast<std::size_t>(k)] -= Complex(0.0, step);
        const CMatrix dx = (1.0 / (2.0 * step)) * (field(px) - field(mx));
        const CMatrix dy = (1.0 / (2.0 * step)) * (field(py) - field(my));
        const Complex iy = bar ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
        return 0.5 * (dx + iy * dy);
    };
    return richardson(once(h), once(0.5 * h));
}

}  // namespace

MonteCarloEstimate mc_moment(const DomainSpec& spec, const MultiIndex& p, double radial_bound,
                             long long samples, std::uint64_t seed) {
    return mc_impl(spec, p, radial_bound, samples, seed, true);
}

MonteCarloEstimate mc_moment_serial(const DomainSpec& spec, const MultiIndex& p,
                                    double radial_bound, long long samples, std::uint64_t seed) {
    return mc_impl(spec, p, radial_bound, samples, seed, false);
}

CMatrix fd_log_kernel_hessian(const LogKernel& log_kernel, const Point& z, const Point& w,
                              double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_log_kernel_hessian: h must be > 0");
    return richardson(fd_hessian_once(log_kernel, z, w, h),
                      fd_hessian_once(log_kernel, z, w, 0.5 * h));
}

CMatrix fd_log_kernel_hessian(const KernelForm& K, const Point& z, const Point& w, double h) {
    LogKernel lk = [&K](const Point& zz, const Point& ww) -> Complex {
        return std::log(kernel_eval(K, zz, ww));
    };
    return fd_log_kernel_hessian(lk, z, w, h);
}

CMatrix fd_wirtinger_z(const MatrixField& field, const Point& z, int k, double h) {
    return fd_matrix_wirtinger(field, z, k, h, false);
}

CMatrix fd_wirtinger_zbar(const MatrixField& field, const Point& z, int l, double h) {
    return fd_matrix_wirtinger(field, z, l, h, true);
}

double fd_sectional_curvature(const MatrixField& metric_field, const Point& z, const Point& X,
                              double h) {
    const int n = static_cast<int>(z.size());
    const CMatrix g = metric_field(z);

    Complex den_c = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            den_c += g(i, j) * X[static_cast<std::size_t>(i)] * std::conj(X[static_cast<std::size_t>(j)]);
        }
    }
    const double den = den_c.real();
    if (!(den * den > 1e-280)) {
        throw DegenerateDirection("fd_sectional_curvature: direction too small");
    }

    const CMatrix ginv = inverse(g);
    std::vector<CMatrix> dg;
    dg.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) dg.push_back(fd_wirtinger_z(metric_field, z, k, h));

    Complex num = 0.0;
    for (int k = 0; k < n; ++k) {
        auto dgk_field = [&metric_field, k, h](const Point& zz) -> CMatrix {
            return fd_wirtinger_z(metric_field, zz, k, h);
        };
        for (int l = 0; l < n; ++l) {
            const CMatrix hess = fd_wirtinger_zbar(dgk_field, z, l, h);
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

double fs_reference_curvature(int n, const Point& z, const Point& X) {
    if (static_cast<int>(z.size()) != n || static_cast<int>(X.size()) != n) {
        throw std::invalid_argument("fs_reference_curvature: dimension mismatch");
    }
    // Hand-derived metric of the potential log(1 + sum |z|^2) and the
    // space-form identity R_{i jbar k lbar} = g_{i jbar} g_{k lbar}
    //                                        + g_{i lbar} g_{k jbar}.
    double K = 1.0;
    for (const Complex& zi : z) K += std::norm(zi);
    CMatrix g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex e = -std::conj(z[static_cast<std::size_t>(i)]) * z[static_cast<std::size_t>(j)] / (K * K);
            if (i == j) e += 1.0 / K;
            g(i, j) = e;
        }
    }
    Complex gxx = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            gxx += g(i, j) * X[static_cast<std::size_t>(i)] * std::conj(X[static_cast<std::size_t>(j)]);
        }
    }
    const double den = gxx.real();
    if (!(den * den > 1e-280)) {
        throw DegenerateDirection("fs_reference_curvature: direction too small");
    }
    Complex num = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    const Complex r = g(i, j) * g(k, l) + g(i, l) * g(k, j);
                    num += r * X[static_cast<std::size_t>(i)] * std::conj(X[static_cast<std::size_t>(j)]) *
                           X[static_cast<std::size_t>(k)] * std::conj(X[static_cast<std::size_t>(l)]);
                }
            }
        }
    }
    return num.real() / (den * den);
}

}  // namespace bergman
