#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace spinlab {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle into the canonical range [-pi, pi).
inline double wrap_angle(double x) {
    double y = std::remainder(x, kTwoPi);
    if (y >= kPi) y -= kTwoPi;
    if (y < -kPi) y += kTwoPi;
    return y;
}

// Distance between two angles on the circle, in [0, pi].
inline double ang_dist(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

inline bool is_finite(cxd z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Column spinor.
struct Vec2C {
    cxd v0{0.0, 0.0};
    cxd v1{0.0, 0.0};

    double norm() const { return std::sqrt(std::norm(v0) + std::norm(v1)); }

    // Conjugate-linear in *this: <this|other>.
    cxd dot(const Vec2C& o) const { return std::conj(v0) * o.v0 + std::conj(v1) * o.v1; }

    Vec2C scaled(cxd s) const { return {s * v0, s * v1}; }

    Vec2C normalized() const {
        double n = norm();
        return {v0 / n, v1 / n};
    }

    Vec2C operator+(const Vec2C& o) const { return {v0 + o.v0, v1 + o.v1}; }
    Vec2C operator-(const Vec2C& o) const { return {v0 - o.v0, v1 - o.v1}; }
};

// Dense 2x2 complex matrix, the workhorse for the spin sector.
struct Mat2C {
    cxd a00{0.0, 0.0}, a01{0.0, 0.0};
    cxd a10{0.0, 0.0}, a11{0.0, 0.0};

    static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2C zero() { return {}; }
    static Mat2C pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2C pauli_y() { return {0.0, cxd(0.0, -1.0), cxd(0.0, 1.0), 0.0}; }
    static Mat2C pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

    Mat2C operator*(const Mat2C& o) const {
        return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
                a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
    }

    Vec2C operator*(const Vec2C& v) const {
        return {a00 * v.v0 + a01 * v.v1, a10 * v.v0 + a11 * v.v1};
    }

    Mat2C operator+(const Mat2C& o) const {
        return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
    }

    Mat2C operator-(const Mat2C& o) const {
        return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
    }

    Mat2C scaled(cxd s) const { return {s * a00, s * a01, s * a10, s * a11}; }

    Mat2C adjoint() const {
        return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
    }

    cxd trace() const { return a00 + a11; }
    cxd det() const { return a00 * a11 - a01 * a10; }

    double frobenius() const {
        return std::sqrt(std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11));
    }

    double max_abs() const {
        return std::max(std::max(std::abs(a00), std::abs(a01)),
                        std::max(std::abs(a10), std::abs(a11)));
    }

    bool is_unitary(double tol = 1e-12) const {
        Mat2C d = adjoint() * (*this) - identity();
        return d.frobenius() <= tol;
    }

    bool is_hermitian(double tol = 1e-12) const {
        Mat2C d = *this - adjoint();
        return d.frobenius() <= tol;
    }

    bool is_finite_mat() const {
        return is_finite(a00) && is_finite(a01) && is_finite(a10) && is_finite(a11);
    }
};

// |a><b|
inline Mat2C outer(const Vec2C& a, const Vec2C& b) {
    return {a.v0 * std::conj(b.v0), a.v0 * std::conj(b.v1),
            a.v1 * std::conj(b.v0), a.v1 * std::conj(b.v1)};
}

// exp(-i * angle * (axis . sigma)) for a unit axis, via the closed form
// cos(angle) I - i sin(angle) (axis . sigma). Throws std::invalid_argument
// if the axis norm deviates from 1 by more than 1e-9.
Mat2C pauli_exp(const std::array<double, 3>& axis, double angle);

// exp(+i * h * tau) for Hermitian h, via its Pauli decomposition.
Mat2C exp_i_hermitian(const Mat2C& h, double tau);

} // namespace spinlab
