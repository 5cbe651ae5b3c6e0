#pragma once

#include <vector>

#include "spinlab/complexmat.hpp"
#include "spinlab/densemat.hpp"

namespace spinlab {

// One-dimensionally mobile kicked spin on a periodic grid: the standard
// two-level kick acts at each site R_j = j L / N and composes with the free
// kinetic factor e^{-i P^2 / (2 mass)}. States interleave the site and the
// spin (or branch) component as index 2 j + s.

struct GridSpec {
    int n_points = 64;             // N: power of two, at least 8
    double period = 2.0 * kTwoPi;  // L, default 4 pi (one eigenframe double-cycle)
    double mass = 1.0;             // kinetic mass, not the kick count

    double site(int j) const { return period * j / n_points; }
};

// n_points a power of two >= 8, period > 0, mass > 0.
void validate_grid(const GridSpec& grid);

// Spin-resolved field over the grid. `normalized` is caller-maintained
// metadata: set it when the amplitudes are meant to carry unit norm.
struct LabState {
    std::vector<cxd> amplitudes;
    bool normalized = false;
};

// The eigenframe is 4 pi antiperiodic, so branch fields of a periodic lab
// state live on half-integer momentum modes kappa = 2 pi (m + 1/2) / L.
// twisted_2pi (period 2 pi with an explicit seam matrix) is documented as
// the alternative but not implemented; operations reject it.
enum class Boundary { antiperiodic_4pi, twisted_2pi };

struct MovingFrameState {
    std::vector<cxd> amplitudes;
    Boundary boundary = Boundary::antiperiodic_4pi;
};

// Half-integer mode windows for the spectral-mode kinetic factor, one per
// connection sector (the sigma_y eigenvector (1, i)/sqrt(2) carries the
// connection eigenvalue +1/4, its partner -1/4). Offsets shift each window
// start away from the aligned choice, [-N/2, N/2) for the plus sector and
// [-N/2 - 1, N/2 - 1) for the minus one. Nonzero offsets raise WindowError
// unless allow_misaligned is set (the cutoff-mismatch demonstration).
struct MomentumWindows {
    int offset_plus = 0;
    int offset_minus = 0;
    bool allow_misaligned = false;
};

// Paired eigenphase lists (ascending in [-pi, pi)) with their min-max
// angular matching distance.
struct SpectrumComparison {
    std::vector<double> lab_phases;
    std::vector<double> moving_phases;
    double matching_distance = 0.0;
};

// conjugated: Omega^dag U_lab Omega with Omega the position-diagonal frame
// rotation. spectral: exp(-i (P - A)^2 / (2 mass)) exp(-i E(R)) assembled
// independently on the antiperiodic momentum grid; with aligned windows the
// two matrices agree entry by entry.
enum class FrameMode { conjugated, spectral };

// Dense 2N x 2N lab-frame Floquet operator: the kinetic factor (diagonal
// e^{-i k^2 / (2 mass)} on the periodic momentum grid, identical per spin
// component) times the per-site spin kick. spin_identity swaps the kick for
// the identity (free-particle hook). Dense assembly is capped at N = 256.
DenseMat build_lab_floquet(const GridSpec& grid, bool spin_identity = false);

// Split-step application of the same operator without densification:
// pointwise spin kick, DFT per spin component, kinetic phases, inverse DFT.
LabState apply_lab_floquet(const GridSpec& grid, const LabState& state);

// psi_s(R_j) = <phi_s(R_j), Psi(R_j)> against the closed-form eigenframe,
// with branch 0 the (cos R/4, sin R/4) family (E_0 = R/2 + pi/2). Requires
// period 4 pi. frame_untransform inverts it; the round trip is an identity
// on the amplitudes. A lab state periodic under R -> R + 2 pi transforms to
// branch fields obeying psi(R + 2 pi) = [[0, 1], [-1, 0]] psi(R).
MovingFrameState frame_transform(const GridSpec& grid, const LabState& state);
LabState frame_untransform(const GridSpec& grid, const MovingFrameState& state);

// Dense 2N x 2N moving-frame Floquet operator; see FrameMode. The windows
// argument only affects spectral mode.
DenseMat build_moving_frame_floquet(const GridSpec& grid, FrameMode mode,
                                    const MomentumWindows& windows = {});

// Comparison operator for the single-exponential reading
// exp(-i {(P - A)^2 / (2 mass) + E}): materializes the Hermitian exponent,
// with E the linear branch energies R/2 +- pi/2 sampled on the grid, and
// exponentiates by dense eigensolve. Not equivalent to the product form
// (non-commuting sum); its spectrum reports the discrepancy.
DenseMat build_moving_frame_single_exp(const GridSpec& grid);

// Eigenphases of the lab and spectral-mode moving-frame operators plus
// their matching distance.
SpectrumComparison compare_frames(const GridSpec& grid);

// Min-max circular matching of two equal-length phase lists: wrap and sort
// both, take the best cyclic alignment, report the worst pair distance.
double match_phase_sets(const std::vector<double>& a,
                        const std::vector<double>& b);

} // namespace spinlab
