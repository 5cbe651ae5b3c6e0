#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "spinlab/complexmat.hpp"
#include "spinlab/densemat.hpp"
#include "spinlab/dft.hpp"
#include "spinlab/eigen.hpp"
#include "spinlab/rng.hpp"

using namespace spinlab;

namespace {

// Matrix exponential by plain power series, the independent oracle for the
// closed-form Pauli exponentials. Converges fast for the norms used here.
Mat2C expm_series(const Mat2C& m) {
    Mat2C sum = Mat2C::identity();
    Mat2C term = Mat2C::identity();
    for (int k = 1; k <= 40; ++k) {
        term = (term * m).scaled(1.0 / k);
        sum = sum + term;
    }
    return sum;
}

DenseMat random_hermitian(std::size_t n, SplitMix64& rng) {
    DenseMat h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.at(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < n; ++j) {
            cxd z{rng.gaussian(), rng.gaussian()};
            h.at(i, j) = z;
            h.at(j, i) = std::conj(z);
        }
    }
    return h;
}

double max_phase_err(const std::vector<double>& got, const std::vector<double>& want) {
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        worst = std::max(worst, ang_dist(got[i], want[i]));
    return worst;
}

} // namespace

TEST_CASE("pauli matrices multiply by the algebra table") {
    Mat2C x = Mat2C::pauli_x(), y = Mat2C::pauli_y(), z = Mat2C::pauli_z();
    cxd i{0.0, 1.0};
    CHECK(((x * y) - z.scaled(i)).max_abs() == 0.0);
    CHECK(((y * z) - x.scaled(i)).max_abs() == 0.0);
    CHECK(((z * x) - y.scaled(i)).max_abs() == 0.0);
    CHECK(((x * x) - Mat2C::identity()).max_abs() == 0.0);
    CHECK(((y * y) - Mat2C::identity()).max_abs() == 0.0);
}

TEST_CASE("pauli_exp matches the power series") {
    cxd mi{0.0, -1.0};
    struct Probe { std::array<double, 3> axis; double angle; };
    const Probe probes[] = {
        {{0.0, 0.0, 1.0}, 0.7},
        {{0.0, 1.0, 0.0}, -2.3},
        {{1.0, 0.0, 0.0}, kPi / 2},
        {{0.6, 0.0, 0.8}, 1.9},
        {{0.36, 0.48, 0.8}, -0.4},
    };
    for (const auto& p : probes) {
        Mat2C gen = Mat2C::pauli_x().scaled(p.axis[0]) +
                    Mat2C::pauli_y().scaled(p.axis[1]) +
                    Mat2C::pauli_z().scaled(p.axis[2]);
        Mat2C want = expm_series(gen.scaled(mi * p.angle));
        CHECK((pauli_exp(p.axis, p.angle) - want).max_abs() < 1e-14);
    }
    CHECK(pauli_exp({0.0, 1.0, 0.0}, 0.9).is_unitary(1e-14));
    CHECK_THROWS_AS(pauli_exp({0.5, 0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("exp_i_hermitian matches the power series") {
    cxd i{0.0, 1.0};
    Mat2C h{1.3, cxd{0.2, -0.7}, cxd{0.2, 0.7}, -0.4};
    for (double tau : {0.0, 0.5, -1.7, 3.0}) {
        Mat2C want = expm_series(h.scaled(i * tau));
        CHECK((exp_i_hermitian(h, tau) - want).max_abs() < 1e-13);
        CHECK(exp_i_hermitian(h, tau).is_unitary(1e-13));
    }
}

TEST_CASE("dft sends a plane wave to a single bin") {
    const std::size_t n = 8;
    std::vector<cxd> x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = std::polar(1.0, kTwoPi * 3.0 * j / n);
    auto spec = dft_forward(x);
    for (std::size_t k = 0; k < n; ++k) {
        cxd want = (k == 3) ? cxd{std::sqrt(8.0), 0.0} : cxd{0.0, 0.0};
        CHECK(std::abs(spec[k] - want) < 1e-13);
    }
}

TEST_CASE("dft round trip and unitarity") {
    SplitMix64 rng(11);
    for (std::size_t n : {8u, 12u, 64u}) {
        std::vector<cxd> x(n);
        for (auto& z : x) z = cxd{rng.gaussian(), rng.gaussian()};
        auto back = dft_inverse(dft_forward(x));
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(back[j] - x[j]));
        CHECK(worst < 1e-13);

        // Parseval as a unitarity probe.
        double nx = 0.0, ns = 0.0;
        auto spec = dft_forward(x);
        for (std::size_t j = 0; j < n; ++j) {
            nx += std::norm(x[j]);
            ns += std::norm(spec[j]);
        }
        CHECK(std::abs(nx - ns) < 1e-11);
    }
    CHECK(dft_matrix(16).is_unitary(1e-13));
}

TEST_CASE("radix-2 path agrees with the dense kernel") {
    SplitMix64 rng(12);
    const std::size_t n = 16;
    std::vector<cxd> x(n);
    for (auto& z : x) z = cxd{rng.gaussian(), rng.gaussian()};
    auto fast = dft_forward(x);
    auto direct = dft_matrix(n).apply(x);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(fast[k] - direct[k]) < 1e-13);
}

TEST_CASE("densemat adjoint, product and apply agree with explicit loops") {
    SplitMix64 rng(13);
    const std::size_t n = 5;
    DenseMat a(n), b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a.at(i, j) = cxd{rng.gaussian(), rng.gaussian()};
            b.at(i, j) = cxd{rng.gaussian(), rng.gaussian()};
        }
    DenseMat c = a * b;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cxd s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) s += a.at(i, k) * b.at(k, j);
            CHECK(std::abs(c.at(i, j) - s) < 1e-13);
            CHECK(a.adjoint().at(j, i) == std::conj(a.at(i, j)));
        }
    std::vector<cxd> x(n);
    for (auto& z : x) z = cxd{rng.gaussian(), rng.gaussian()};
    auto y = a.apply(x);
    for (std::size_t i = 0; i < n; ++i) {
        cxd s{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) s += a.at(i, k) * x[k];
        CHECK(std::abs(y[i] - s) < 1e-13);
    }
    CHECK(a.column(2)[3] == a.at(3, 2));
}

TEST_CASE("splitmix64 is deterministic and random_unitary is unitary") {
    SplitMix64 a(42), b(42);
    for (int k = 0; k < 64; ++k) CHECK(a.next() == b.next());

    SplitMix64 rng(7);
    DenseMat q = random_unitary(24, rng);
    CHECK(q.is_unitary(1e-12));
}

TEST_CASE("jacobi_hermitian recovers a constructed spectrum") {
    SplitMix64 rng(21);
    const std::size_t n = 40;
    DenseMat q = random_unitary(n, rng);
    std::vector<double> vals(n);
    for (std::size_t k = 0; k < n; ++k) vals[k] = -3.0 + 6.0 * k / (n - 1);
    // Two exact repeats to exercise degenerate blocks.
    vals[10] = vals[9];
    vals[25] = vals[24];
    std::sort(vals.begin(), vals.end());

    DenseMat h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cxd s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                s += q.at(i, k) * vals[k] * std::conj(q.at(j, k));
            h.at(i, j) = s;
        }

    auto eig = jacobi_hermitian(h);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(eig.values[k] - vals[k]) < 1e-10);
    for (std::size_t k = 0; k < n; ++k) {
        auto v = eig.vectors.column(k);
        auto hv = h.apply(v);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res += std::norm(hv[i] - eig.values[k] * v[i]);
        CHECK(std::sqrt(res) < 1e-10);
    }
    CHECK(eig.vectors.is_unitary(1e-10));
}

TEST_CASE("jacobi_hermitian rejects non-hermitian input") {
    DenseMat m(3);
    m.at(0, 1) = 1.0;
    CHECK_THROWS_AS(jacobi_hermitian(m), std::invalid_argument);
}

TEST_CASE("unitary_eigensystem recovers constructed eigenphases") {
    SplitMix64 rng(22);
    const std::size_t n = 40;
    DenseMat q = random_unitary(n, rng);
    std::vector<double> phases(n);
    for (std::size_t k = 0; k < n; ++k) phases[k] = -kPi + 0.97 * kTwoPi * k / n;
    // Mirror pairs +-E share cos E, forcing the block pass on S.
    phases[5] = -phases[30];
    phases[6] = -phases[31];
    std::sort(phases.begin(), phases.end());

    DenseMat u(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cxd s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                s += q.at(i, k) * std::polar(1.0, -phases[k]) * std::conj(q.at(j, k));
            u.at(i, j) = s;
        }

    auto eig = unitary_eigensystem(u);
    CHECK(max_phase_err(eig.values, phases) < 1e-10);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    for (std::size_t k = 0; k < n; ++k) {
        auto v = eig.vectors.column(k);
        auto uv = u.apply(v);
        cxd mu = std::polar(1.0, -eig.values[k]);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += std::norm(uv[i] - mu * v[i]);
        CHECK(std::sqrt(res) < 1e-9);
    }
}

TEST_CASE("unitary_eigensystem handles a 256-dim construct-recover") {
    SplitMix64 rng(23);
    const std::size_t n = 256;
    DenseMat q = random_unitary(n, rng);
    std::vector<double> phases(n);
    for (std::size_t k = 0; k < n; ++k) phases[k] = wrap_angle(rng.uniform() * kTwoPi);
    std::sort(phases.begin(), phases.end());

    DenseMat u(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cxd s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                s += q.at(i, k) * std::polar(1.0, -phases[k]) * std::conj(q.at(j, k));
            u.at(i, j) = s;
        }
    auto eig = unitary_eigensystem(u);
    CHECK(max_phase_err(eig.values, phases) < 1e-9);
}

TEST_CASE("unitary_eigensystem rejects non-unitary input") {
    DenseMat m = DenseMat::identity(4);
    m.at(0, 0) = 2.0;
    CHECK_THROWS_AS(unitary_eigensystem(m), std::invalid_argument);
}

TEST_CASE("jacobi output is ascending for a random hermitian matrix") {
    SplitMix64 rng(24);
    DenseMat h = random_hermitian(17, rng);
    auto eig = jacobi_hermitian(h);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    // Trace is basis independent.
    double tr = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < 17; ++i) {
        tr += h.at(i, i).real();
        sum += eig.values[i];
    }
    CHECK(std::abs(tr - sum) < 1e-10);
}
