#pragma once

#include <vector>

#include "spinlab/densemat.hpp"

namespace spinlab {

// Eigen decomposition result. `values` holds real eigenvalues for Hermitian
// input, or eigenphases E in [-pi, pi) (eigenvalue written e^{-iE}) for
// unitary input. Column j of `vectors` pairs with values[j]; columns are
// orthonormal.
struct EigenPairSet {
    std::vector<double> values;
    DenseMat vectors;
};

// Cyclic complex Jacobi for Hermitian matrices. Eigenvalues ascending.
// Input must be Hermitian to 1e-10 (relative Frobenius) or the call throws
// invalid_argument. Convergence: off-diagonal Frobenius norm below
// 1e-13 * ||m||_F within 100 sweeps, else NumericFailure.
EigenPairSet jacobi_hermitian(const DenseMat& m);

// Spectrum of a unitary matrix via the commuting Hermitian pair
// C = (u+u^dag)/2, S = (u-u^dag)/(2i): Jacobi on C, then a second Jacobi
// pass on S restricted to each degenerate C block (gap < 1e-8). Eigenphase
// per joint eigenvector is E = atan2(-<S>, <C>), canonical in [-pi, pi),
// sorted ascending. Residual ||u v - e^{-iE} v|| above 1e-8 on any pair
// throws NumericFailure; non-unitary input throws invalid_argument.
EigenPairSet unitary_eigensystem(const DenseMat& u);

} // namespace spinlab
