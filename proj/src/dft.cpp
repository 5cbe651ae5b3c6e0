#include "spinlab/dft.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlab {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey. sign = -1 forward, +1 inverse.
void fft_pow2(std::vector<cxd>& x, double sign) {
    const std::size_t n = x.size();
    // bit reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * kTwoPi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cxd w = std::polar(1.0, ang * static_cast<double>(k));
                cxd u = x[i + k];
                cxd v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cxd> dft_direct(const std::vector<cxd>& x, double sign) {
    const std::size_t n = x.size();
    std::vector<cxd> y(n, cxd{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        cxd s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            double ang = sign * kTwoPi * static_cast<double>(k) *
                         static_cast<double>(j) / static_cast<double>(n);
            s += x[j] * std::polar(1.0, ang);
        }
        y[k] = s;
    }
    return y;
}

std::vector<cxd> dft_run(const std::vector<cxd>& x, double sign) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("dft: empty input");
    std::vector<cxd> y;
    if (is_pow2(n)) {
        y = x;
        fft_pow2(y, sign);
    } else {
        y = dft_direct(x, sign);
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cxd& z : y) z *= scale;
    return y;
}

} // namespace

std::vector<cxd> dft_forward(const std::vector<cxd>& x) { return dft_run(x, -1.0); }

std::vector<cxd> dft_inverse(const std::vector<cxd>& x) { return dft_run(x, +1.0); }

DenseMat dft_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dft_matrix: empty size");
    DenseMat m(n);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            double ang = -kTwoPi * static_cast<double>(k) *
                         static_cast<double>(j) / static_cast<double>(n);
            m.at(k, j) = scale * std::polar(1.0, ang);
        }
    return m;
}

} // namespace spinlab
