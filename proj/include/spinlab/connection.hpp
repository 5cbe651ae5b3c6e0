#pragma once

#include <array>
#include <vector>

#include "spinlab/complexmat.hpp"
#include "spinlab/kicked_spin.hpp"

namespace spinlab {

// Eigenvector phase conventions for connection estimates.
//  real_gauge          largest-magnitude component real positive at every
//                      stencil point (deterministic, discontinuous at
//                      isolated r where the lead component changes sign)
//  parallel_transport  stencil points phase-aligned to phi(r), phi(r) itself
//                      transported from the r = 0 anchor; diagonal entries
//                      vanish by construction
//  kick_component_real <v|phi_s> made real positive at every stencil point
//                      (undefined where that overlap vanishes)
enum class GaugeTag { real_gauge, parallel_transport, kick_component_real };

const char* gauge_name(GaugeTag g);

// One connection estimate A_{ss'}(r) = <phi_s(r)| i d/dr phi_{s'}(r)> in the
// branch basis. `a` is the Hermitized estimate; `fd_residual` is the
// Frobenius norm of the discarded anti-Hermitian part (0 for analytic).
struct ConnectionSample {
    double r = 0.0;
    Mat2C a;
    GaugeTag gauge_tag = GaugeTag::real_gauge;
    double fd_residual = 0.0;
};

struct WilsonLoop {
    double r_start = 0.0, r_end = 0.0;
    int steps = 0;
    Mat2C w;
};

// Per-gauge diagonal survey over r samples. Samples where the gauge is
// undefined (kick gauge with <v|phi_s> = 0) are skipped and listed.
struct DiagonalReport {
    GaugeTag gauge = GaugeTag::real_gauge;
    double max_abs_diag = 0.0;
    std::vector<double> evaluated;
    std::vector<double> skipped;
    std::vector<std::array<double, 2>> diagonals;  // (|A00|, |A11|) per evaluated r
};

// Constant closed form for the standard model: A00 = A11 = 0,
// A01 = -i/4, A10 = +i/4 (i.e. sigma_y / 4 in the branch basis).
// Generalized models throw UnsupportedModel.
ConnectionSample connection_analytic(const KickedSpinModel& model, double r);

// Central-difference estimate with stencil spacing h in [1e-6, 1e-2].
// Branch labels are carried by continuation from r = 0; the eigenphase gap
// is checked at r first (gap <= 1e-3 throws DegenerateBranch). A stencil
// straddling a real-gauge flip throws ContinuationFailure; a vanishing
// <v|phi_s> in the kick gauge throws GaugeSingular.
ConnectionSample connection_fd(const KickedSpinModel& model, double r, double h,
                               GaugeTag gauge = GaugeTag::parallel_transport);

// Max |A_ss| over the samples in the requested gauge (rank-1 models only).
DiagonalReport rank1_diagonal_check(const KickedSpinModel& model,
                                    const std::vector<double>& r_samples,
                                    GaugeTag gauge, double h = 1e-4);

// Path-ordered product prod_k exp(i A(r_k) dr) over `steps` midpoint samples,
// accumulated left to right with increasing r. Requires steps >= 256 per
// 2 pi of path. Samples use connection_fd in the parallel-transport gauge.
WilsonLoop wilson_loop(const KickedSpinModel& model, double r_start,
                       double r_end, int steps);

} // namespace spinlab
