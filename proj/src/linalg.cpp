#include "bergman/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bergman {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out(i, j) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& v : d_) m = std::max(m, std::abs(v));
    return m;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.n_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) out.d_[i] = a.d_[i] + b.d_[i];
    return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.n_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) out.d_[i] = a.d_[i] - b.d_[i];
    return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const int n = a.n_;
    CMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix out(a.n_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) out.d_[i] = s * a.d_[i];
    return out;
}

std::vector<Complex> mat_vec(const CMatrix& m, const std::vector<Complex>& v) {
    const int n = m.size();
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

Complex det(const CMatrix& m) {
    const int n = m.size();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (n == 3) {
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
    // LU with partial pivoting.
    CMatrix a = m;
    Complex result = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            result = -result;
        }
        result *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) / a(col, col);
            for (int j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
        }
    }
    return result;
}

CMatrix inverse(const CMatrix& m) {
    const int n = m.size();
    CMatrix a = m;
    CMatrix inv = CMatrix::identity(n);
    const double scale = std::max(m.max_abs(), 1e-300);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best < 1e-14 * scale) throw std::runtime_error("inverse: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const Complex d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex factor = a(r, col);
            if (factor == Complex{}) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= factor * a(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

double hermiticity_defect(const CMatrix& m) {
    double defect = 0.0;
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return defect;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    const int n = m.size();
    CMatrix a = m;
    // Cyclic Jacobi: rotate away each off-diagonal entry; quadratic
    // convergence once the matrix is nearly diagonal.
    const double scale = std::max(a.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * scale) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex phase = apq / mag;  // apq = |apq| e^{i phi}
                const double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
                const double c = std::cos(theta);
                const Complex s = std::sin(theta) * std::conj(phase);
                // Columns: [vp, vq] <- [c*vp + s*vq, -conj(s)*vp + c*vq]
                for (int r = 0; r < n; ++r) {
                    const Complex vp = a(r, p);
                    const Complex vq = a(r, q);
                    a(r, p) = c * vp + s * vq;
                    a(r, q) = -std::conj(s) * vp + c * vq;
                }
                // Rows: conjugate-transpose action.
                for (int cidx = 0; cidx < n; ++cidx) {
                    const Complex vp = a(p, cidx);
                    const Complex vq = a(q, cidx);
                    a(p, cidx) = c * vp + std::conj(s) * vq;
                    a(q, cidx) = -s * vp + c * vq;
                }
            }
        }
    }
    std::vector<double> eigs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eigs[static_cast<std::size_t>(i)] = a(i, i).real();
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

HermitianForm HermitianForm::from_matrix(const CMatrix& raw, double tol) {
    const double scale = std::max(1.0, raw.max_abs());
    if (hermiticity_defect(raw) > tol * scale) {
        throw std::invalid_argument("HermitianForm: matrix is not Hermitian within tolerance");
    }
    HermitianForm h;
    h.m = CMatrix(raw.size());
    for (int i = 0; i < raw.size(); ++i) {
        for (int j = 0; j < raw.size(); ++j) {
            h.m(i, j) = 0.5 * (raw(i, j) + std::conj(raw(j, i)));
        }
    }
    return h;
}

double HermitianForm::min_eigenvalue() const {
    const auto eigs = eigenvalues();
    return eigs.empty() ? 0.0 : eigs.front();
}

}  // namespace bergman
