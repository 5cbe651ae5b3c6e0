#pragma once

#include <cstddef>
#include <vector>

#include "spinlab/complexmat.hpp"

namespace spinlab {

// Row-major dense complex matrix. Sized for desk-scale spectra (n <= ~512);
// everything is plain O(n^2)/O(n^3) with value semantics.
struct DenseMat {
    std::size_t n = 0;
    std::vector<cxd> a;

    DenseMat() = default;
    explicit DenseMat(std::size_t dim) : n(dim), a(dim * dim, cxd{0.0, 0.0}) {}

    static DenseMat identity(std::size_t dim) {
        DenseMat m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    cxd& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    DenseMat adjoint() const;
    DenseMat operator*(const DenseMat& o) const;
    DenseMat operator+(const DenseMat& o) const;
    DenseMat operator-(const DenseMat& o) const;
    std::vector<cxd> apply(const std::vector<cxd>& x) const;

    double frobenius() const;
    double max_abs() const;
    bool is_finite_mat() const;

    // ||A - A^dag||_F <= tol * max(1, ||A||_F)
    bool is_hermitian(double tol = 1e-10) const;
    // ||A^dag A - I||_F <= tol * sqrt(n)
    bool is_unitary(double tol = 1e-10) const;

    // Column j as a vector.
    std::vector<cxd> column(std::size_t j) const;
};

} // namespace spinlab
