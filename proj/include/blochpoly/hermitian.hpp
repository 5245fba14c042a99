#pragma once

#include <complex>
#include <vector>

namespace blochpoly {

// Dense square complex matrix, row-major.
struct CMatrix {
    int n = 0;
    std::vector<std::complex<double>> a;

    CMatrix() = default;
    explicit CMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_) {}

    std::complex<double> &at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const std::complex<double> &at(int i, int j) const {
        return a[static_cast<size_t>(i) * n + j];
    }

    double max_hermitian_defect() const; // max |A - A^H| entrywise
    double frobenius() const;
};

struct EighResult {
    std::vector<double> values; // ascending
    CMatrix vectors;            // column j is the eigenvector of values[j]
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations; converges when the off-diagonal Frobenius norm drops below
// 1e-13 times the matrix norm. Deterministic: fixed sweep order, stable
// value sort.
EighResult eigh(const CMatrix &m);

// Determinant via LU factorization with partial pivoting. Serves as the
// numeric cross-check for the exact characteristic polynomial; keep it
// independent of the symbolic code paths.
std::complex<double> lu_det(CMatrix m);

} // namespace blochpoly
