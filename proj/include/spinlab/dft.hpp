#pragma once

#include <vector>

#include "spinlab/complexmat.hpp"
#include "spinlab/densemat.hpp"

namespace spinlab {

// Unitary discrete Fourier transform, normalized by 1/sqrt(N) in both
// directions. Forward kernel is exp(-2*pi*i*j*k/N). Power-of-two sizes go
// through an iterative radix-2 routine; anything else falls back to the
// direct O(N^2) sum.
std::vector<cxd> dft_forward(const std::vector<cxd>& x);
std::vector<cxd> dft_inverse(const std::vector<cxd>& x);

// Dense matrix of the forward transform (rows indexed by k, columns by j).
DenseMat dft_matrix(std::size_t n);

} // namespace spinlab
