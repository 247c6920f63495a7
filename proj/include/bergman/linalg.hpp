#pragma once

#include <complex>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.  Sized for the small n of this
// project; no attempt at blocking or views.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n) {}

    static CMatrix identity(int n);

    int size() const { return n_; }

    Complex& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    const Complex& operator()(int i, int j) const {
        return d_[static_cast<std::size_t>(i) * n_ + j];
    }

    CMatrix transpose() const;
    CMatrix conjugate() const;
    CMatrix adjoint() const;

    double max_abs() const;

    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(Complex s, const CMatrix& a);

private:
    int n_ = 0;
    std::vector<Complex> d_;
};

std::vector<Complex> mat_vec(const CMatrix& m, const std::vector<Complex>& v);

// Cofactor expansion for n <= 3, LU with partial pivoting above.
Complex det(const CMatrix& m);

// Gauss-Jordan with partial pivoting; throws std::runtime_error on a
// numerically singular input.
CMatrix inverse(const CMatrix& m);

double hermiticity_defect(const CMatrix& m);  // max |m - m^H| entry

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps, ascending.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

// Hermitian wrapper: construction checks the defect against tol * scale and
// then symmetrizes by averaging with the conjugate transpose.
struct HermitianForm {
    CMatrix m;

    static HermitianForm from_matrix(const CMatrix& raw, double tol = 1e-13);

    int size() const { return m.size(); }
    std::vector<double> eigenvalues() const { return hermitian_eigenvalues(m); }
    double min_eigenvalue() const;
    bool positive_definite() const { return min_eigenvalue() > 0.0; }
};

}  // namespace bergman
