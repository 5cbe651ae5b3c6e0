#pragma once

#include <stdexcept>

namespace spinlab {

// An iterative kernel failed to reach its tolerance (Jacobi non-convergence,
// joint-diagonalization residual above the gate, ...).
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Branch continuation could not decide the matching (ambiguous overlaps, or a
// gauge that is discontinuous across the finite-difference stencil).
struct ContinuationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation with a closed form valid only for the reference model was
// called on a generalized model.
struct UnsupportedModel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quasienergy branches are too close at the requested point for a
// finite-difference connection sample.
struct DegenerateBranch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The eigenvector phase reference vanishes at a sample, so the requested
// gauge is undefined there.
struct GaugeSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Moving-frame momentum windows deviate from the derived alignment and the
// caller did not opt into the misalignment demonstration.
struct WindowError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A search exhausted its documented candidate cap.
struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace spinlab
