#pragma once

#include <cstdint>

#include "spinlab/densemat.hpp"

namespace spinlab {

// SplitMix64: tiny, well-known 64-bit generator. Deterministic across
// platforms given the same seed, which is all the test fixtures need.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double gaussian();

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Haar-ish random unitary: complex Gaussian matrix orthonormalized by
// modified Gram-Schmidt (two passes for orthogonality at working precision).
DenseMat random_unitary(std::size_t n, SplitMix64& rng);

} // namespace spinlab
