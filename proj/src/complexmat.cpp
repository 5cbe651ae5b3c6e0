#include "spinlab/complexmat.hpp"

#include <stdexcept>

namespace spinlab {

Mat2C pauli_exp(const std::array<double, 3>& axis, double angle) {
    double n2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) {
        throw std::invalid_argument("pauli_exp: axis must be a unit vector");
    }
    double c = std::cos(angle);
    cxd ms = cxd(0.0, -std::sin(angle));
    // axis . sigma = [[z, x - i y], [x + i y, -z]]
    cxd offp = cxd(axis[0], -axis[1]);
    cxd offm = cxd(axis[0], axis[1]);
    return {c + ms * axis[2], ms * offp,
            ms * offm, c - ms * axis[2]};
}

Mat2C exp_i_hermitian(const Mat2C& h, double tau) {
    // h = a0 I + a . sigma with a0, a real for Hermitian h.
    double a0 = 0.5 * (h.a00 + h.a11).real();
    double ax = 0.5 * (h.a01 + h.a10).real();
    double ay = 0.5 * (h.a10 - h.a01).imag();
    double az = 0.5 * (h.a00 - h.a11).real();
    double n = std::sqrt(ax * ax + ay * ay + az * az);
    cxd phase = std::exp(cxd(0.0, a0 * tau));
    if (n * std::abs(tau) < 1e-300) {
        return Mat2C::identity().scaled(phase);
    }
    // exp(i tau (a . sigma)) = pauli_exp(a / n, -n tau)
    Mat2C rot = pauli_exp({ax / n, ay / n, az / n}, -n * tau);
    return rot.scaled(phase);
}

} // namespace spinlab
