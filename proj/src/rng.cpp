#include "spinlab/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "spinlab/errors.hpp"

namespace spinlab {

double SplitMix64::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = kTwoPi * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

DenseMat random_unitary(std::size_t n, SplitMix64& rng) {
    if (n == 0) throw std::invalid_argument("random_unitary: empty size");
    DenseMat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = cxd(rng.gaussian(), rng.gaussian());

    // Modified Gram-Schmidt over columns, run twice: the second pass mops up
    // the O(eps * condition) leakage of the first.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                cxd proj{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i)
                    proj += std::conj(m.at(i, k)) * m.at(i, j);
                for (std::size_t i = 0; i < n; ++i)
                    m.at(i, j) -= proj * m.at(i, k);
            }
            double nrm = 0.0;
            for (std::size_t i = 0; i < n; ++i) nrm += std::norm(m.at(i, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12)
                throw NumericFailure("random_unitary: rank-deficient sample");
            for (std::size_t i = 0; i < n; ++i) m.at(i, j) /= nrm;
        }
    }
    return m;
}

} // namespace spinlab
