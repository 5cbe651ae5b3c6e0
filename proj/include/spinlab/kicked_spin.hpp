#pragma once

#include <array>
#include <vector>

#include "spinlab/complexmat.hpp"

namespace spinlab {

// Rank-1 kicked model family: one-period operator
//   U(lambda) = U0 * exp(-i lambda |v><v|) = U0 * (I + (e^{-i lambda} - 1)|v><v|)
// with a fixed free unitary U0 and a unit kick direction |v>.
// The standard model takes U0 = exp(-i (pi/2) sigma_z) = diag(-i, i) and |v>
// the sigma_y eigenvector with eigenvalue -1, v = (1, -i)/sqrt(2), so the kick
// factor equals exp(-i (lambda/2)(1 - sigma_y)). Closed forms (analytic
// branches, constant connection) exist only for the standard model.
struct KickedSpinModel {
    Mat2C free_factor = Mat2C::identity();
    double free_half_angle = 0.0;  // sigma_z half-angle when U0 is sigma_z-generated
    Vec2C kick_direction{cxd{1.0, 0.0}, cxd{0.0, 0.0}};
    bool kick_rank1 = true;
    bool standard = false;

    static KickedSpinModel standard_model();
    static KickedSpinModel rank1(const Mat2C& u0, const Vec2C& v);
};

// Eigenphase/eigenvector pair of a single 2x2 unitary, phases ascending in
// [-pi, pi), vectors unit norm in the deterministic real-positive gauge.
struct QuasiPair {
    std::array<double, 2> phases;
    std::array<Vec2C, 2> vectors;
};

// One quasienergy branch along a lambda sweep. Energies are unwrapped
// (continuous, not folded mod 2 pi); vectors are parallel-transported.
struct QuasiBranch {
    int label = 0;
    std::vector<double> lambdas;
    std::vector<double> energies;
    std::vector<Vec2C> vectors;
};

// End-of-sweep bookkeeping: final branch s matches initial branch mapping[s]
// with overlap sign branch_signs[s] (+1 or -1).
struct CyclePermutation {
    std::array<int, 2> mapping{0, 1};
    std::array<double, 2> branch_signs{1.0, 1.0};
};

struct ContinuationResult {
    std::array<QuasiBranch, 2> branches;
    CyclePermutation permutation;
};

// Closed forms for the standard model. Energies unwrapped:
// e0 = lambda/2 - pi/2, e1 = lambda/2 + pi/2;
// vec0 = (-sin lambda/4, cos lambda/4), vec1 = (cos lambda/4, sin lambda/4).
struct AnalyticBranches {
    double e0 = 0.0, e1 = 0.0;
    Vec2C vec0, vec1;
};

// One-period Floquet operator at kick strength lambda.
Mat2C build_floquet(const KickedSpinModel& model, double lambda);

// Deterministic phase fix: largest-magnitude component made real positive,
// ties (within 1e-12) broken toward the lower index. Idempotent.
Vec2C gauge_fix(const Vec2C& v);

// Eigen pair of a 2x2 unitary (closed form via the characteristic
// polynomial). Throws invalid_argument if u is not unitary to 1e-10.
QuasiPair quasi_eigensystem(const Mat2C& u);

// One continuation step: eigensystem at lambda matched to the previous frame
// by maximal |overlap|, vectors phase-aligned to their predecessors, energies
// unwrapped against prev_energies. Throws ContinuationFailure on ambiguous
// matches (overlap magnitudes within 0.1) or per-step energy motion >= pi/4.
struct BranchStep {
    std::array<double, 2> energies;
    std::array<Vec2C, 2> vectors;
};
BranchStep continue_step(const KickedSpinModel& model, double lambda,
                         const std::array<double, 2>& prev_energies,
                         const std::array<Vec2C, 2>& prev_vectors);

// Match `vectors` against a reference frame by maximal |overlap|; returns
// mapping[s] = index of the reference vector matching vectors[s] and the
// sign of the real part of that overlap. Ambiguity (within 0.1) throws
// ContinuationFailure tagged with `where`.
CyclePermutation match_frames(const std::array<Vec2C, 2>& reference,
                              const std::array<Vec2C, 2>& vectors,
                              double where);

// Track both branches from lambda_start to lambda_end over `steps` uniform
// intervals. Branch identity via maximal-|overlap| matching; ambiguous
// matches (overlaps within 0.1) throw ContinuationFailure naming the lambda.
ContinuationResult continue_branches(const KickedSpinModel& model,
                                     double lambda_start, double lambda_end,
                                     int steps);

// Standard model only; generalized models throw UnsupportedModel.
AnalyticBranches analytic_branches(const KickedSpinModel& model, double lambda);

} // namespace spinlab
