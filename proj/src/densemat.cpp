#include "spinlab/densemat.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlab {

DenseMat DenseMat::adjoint() const {
    DenseMat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(j, i) = std::conj(at(i, j));
    return m;
}

DenseMat DenseMat::operator*(const DenseMat& o) const {
    if (n != o.n) throw std::invalid_argument("DenseMat: dimension mismatch");
    DenseMat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            cxd aik = at(i, k);
            if (aik == cxd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) += aik * o.at(k, j);
        }
    }
    return m;
}

DenseMat DenseMat::operator+(const DenseMat& o) const {
    if (n != o.n) throw std::invalid_argument("DenseMat: dimension mismatch");
    DenseMat m(n);
    for (std::size_t i = 0; i < n * n; ++i) m.a[i] = a[i] + o.a[i];
    return m;
}

DenseMat DenseMat::operator-(const DenseMat& o) const {
    if (n != o.n) throw std::invalid_argument("DenseMat: dimension mismatch");
    DenseMat m(n);
    for (std::size_t i = 0; i < n * n; ++i) m.a[i] = a[i] - o.a[i];
    return m;
}

std::vector<cxd> DenseMat::apply(const std::vector<cxd>& x) const {
    if (x.size() != n) throw std::invalid_argument("DenseMat::apply: size mismatch");
    std::vector<cxd> y(n, cxd{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        cxd s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) s += at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double DenseMat::frobenius() const {
    double s = 0.0;
    for (const cxd& z : a) s += std::norm(z);
    return std::sqrt(s);
}

double DenseMat::max_abs() const {
    double m = 0.0;
    for (const cxd& z : a) m = std::max(m, std::abs(z));
    return m;
}

bool DenseMat::is_finite_mat() const {
    for (const cxd& z : a)
        if (!is_finite(z)) return false;
    return true;
}

bool DenseMat::is_hermitian(double tol) const {
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dev += std::norm(at(i, j) - std::conj(at(j, i)));
    return std::sqrt(dev) <= tol * std::max(1.0, frobenius());
}

bool DenseMat::is_unitary(double tol) const {
    DenseMat g = adjoint() * (*this);
    for (std::size_t i = 0; i < n; ++i) g.at(i, i) -= 1.0;
    return g.frobenius() <= tol * std::sqrt(static_cast<double>(n));
}

std::vector<cxd> DenseMat::column(std::size_t j) const {
    std::vector<cxd> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = at(i, j);
    return c;
}

} // namespace spinlab
