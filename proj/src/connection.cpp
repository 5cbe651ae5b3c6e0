#include "spinlab/connection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

// Branch frame at r, labeled by continuation from the r = 0 anchor in
// DESCENDING canonical eigenphase order (standard model: branch 0 is the
// (cos r/4, sin r/4) family). Vectors carry the parallel-transport phase.
std::array<Vec2C, 2> transported_frame(const KickedSpinModel& model, double r) {
    QuasiPair anchor = quasi_eigensystem(build_floquet(model, 0.0));
    std::array<double, 2> energies{anchor.phases[1], anchor.phases[0]};
    std::array<Vec2C, 2> vectors{anchor.vectors[1], anchor.vectors[0]};
    int steps = (r == 0.0)
                    ? 0
                    : std::max(8, static_cast<int>(std::ceil(std::abs(r) / (kPi / 8.0))));
    for (int k = 1; k <= steps; ++k) {
        BranchStep step = continue_step(model, r * k / steps, energies, vectors);
        energies = step.energies;
        vectors = step.vectors;
    }
    return vectors;
}

// Match the eigenvectors at lambda to the reference frame by maximal
// overlap; returned vectors keep the canonical gauge of quasi_eigensystem.
std::array<Vec2C, 2> matched_pair(const KickedSpinModel& model, double lambda,
                                  const std::array<Vec2C, 2>& ref) {
    QuasiPair cand = quasi_eigensystem(build_floquet(model, lambda));
    std::array<Vec2C, 2> out;
    bool taken[2] = {false, false};
    for (int s = 0; s < 2; ++s) {
        double m0 = std::abs(ref[s].dot(cand.vectors[0]));
        double m1 = std::abs(ref[s].dot(cand.vectors[1]));
        if (std::abs(m0 - m1) < 0.1)
            throw ContinuationFailure(
                "connection_fd: ambiguous stencil match at r = " + std::to_string(lambda));
        int j = (m0 > m1) ? 0 : 1;
        if (taken[j])
            throw ContinuationFailure(
                "connection_fd: stencil branch collision at r = " + std::to_string(lambda));
        taken[j] = true;
        out[s] = cand.vectors[j];
    }
    return out;
}

Vec2C align_to(const Vec2C& ref, const Vec2C& v) {
    cxd ov = ref.dot(v);
    double m = std::abs(ov);
    if (m < 1e-14)
        throw ContinuationFailure("connection_fd: vanishing alignment overlap");
    return v.scaled(std::conj(ov) / m);
}

Vec2C kick_phase(const Vec2C& v, const Vec2C& kick_dir, double r) {
    cxd ov = kick_dir.dot(v);
    double m = std::abs(ov);
    if (m < 1e-12)
        throw GaugeSingular(
            "kick-component gauge undefined: <v|phi> vanishes at r = " + std::to_string(r));
    return v.scaled(std::conj(ov) / m);
}

} // namespace

const char* gauge_name(GaugeTag g) {
    switch (g) {
        case GaugeTag::real_gauge: return "real";
        case GaugeTag::parallel_transport: return "parallel";
        case GaugeTag::kick_component_real: return "kick";
    }
    return "unknown";
}

ConnectionSample connection_analytic(const KickedSpinModel& model, double r) {
    if (!model.standard)
        throw UnsupportedModel("connection_analytic: closed form exists only for the standard model");
    ConnectionSample s;
    s.r = r;
    s.a = {cxd{0.0, 0.0}, cxd{0.0, -0.25}, cxd{0.0, 0.25}, cxd{0.0, 0.0}};
    s.gauge_tag = GaugeTag::real_gauge;
    s.fd_residual = 0.0;
    return s;
}

ConnectionSample connection_fd(const KickedSpinModel& model, double r, double h,
                               GaugeTag gauge) {
    if (!(h >= 1e-6 && h <= 1e-2))
        throw std::invalid_argument("connection_fd: h must lie in [1e-6, 1e-2]");

    // degeneracy guard at r itself, before any labeling continuation
    QuasiPair at_r = quasi_eigensystem(build_floquet(model, r));
    if (ang_dist(at_r.phases[0], at_r.phases[1]) <= 1e-3)
        throw DegenerateBranch(
            "connection_fd: eigenphase gap <= 1e-3 at r = " + std::to_string(r));

    std::array<Vec2C, 2> center = transported_frame(model, r);
    std::array<Vec2C, 2> plus = matched_pair(model, r + h, center);
    std::array<Vec2C, 2> minus = matched_pair(model, r - h, center);

    switch (gauge) {
        case GaugeTag::parallel_transport:
            for (int s = 0; s < 2; ++s) {
                plus[s] = align_to(center[s], plus[s]);
                minus[s] = align_to(center[s], minus[s]);
            }
            break;
        case GaugeTag::real_gauge:
            for (int s = 0; s < 2; ++s) {
                center[s] = gauge_fix(center[s]);
                plus[s] = gauge_fix(plus[s]);
                minus[s] = gauge_fix(minus[s]);
                if (center[s].dot(plus[s]).real() <= 0.0 ||
                    center[s].dot(minus[s]).real() <= 0.0)
                    throw ContinuationFailure(
                        "connection_fd: real-gauge flip inside the stencil at r = " +
                        std::to_string(r));
            }
            break;
        case GaugeTag::kick_component_real:
            for (int s = 0; s < 2; ++s) {
                center[s] = kick_phase(center[s], model.kick_direction, r);
                plus[s] = kick_phase(plus[s], model.kick_direction, r + h);
                minus[s] = kick_phase(minus[s], model.kick_direction, r - h);
            }
            break;
    }

    Mat2C m;
    const cxd i_over_2h = cxd(0.0, 1.0 / (2.0 * h));
    Vec2C d0 = plus[0] - minus[0];
    Vec2C d1 = plus[1] - minus[1];
    m.a00 = i_over_2h * center[0].dot(d0);
    m.a01 = i_over_2h * center[0].dot(d1);
    m.a10 = i_over_2h * center[1].dot(d0);
    m.a11 = i_over_2h * center[1].dot(d1);

    Mat2C herm = (m + m.adjoint()).scaled(0.5);
    Mat2C anti = (m - m.adjoint()).scaled(0.5);

    ConnectionSample out;
    out.r = r;
    out.a = herm;
    out.gauge_tag = gauge;
    out.fd_residual = anti.frobenius();
    return out;
}

DiagonalReport rank1_diagonal_check(const KickedSpinModel& model,
                                    const std::vector<double>& r_samples,
                                    GaugeTag gauge, double h) {
    if (!model.kick_rank1)
        throw UnsupportedModel("rank1_diagonal_check: rank-1 kick models only");
    DiagonalReport rep;
    rep.gauge = gauge;
    for (double r : r_samples) {
        try {
            ConnectionSample s = connection_fd(model, r, h, gauge);
            double d0 = std::abs(s.a.a00), d1 = std::abs(s.a.a11);
            rep.evaluated.push_back(r);
            rep.diagonals.push_back({d0, d1});
            rep.max_abs_diag = std::max({rep.max_abs_diag, d0, d1});
        } catch (const GaugeSingular&) {
            rep.skipped.push_back(r);
        }
    }
    return rep;
}

WilsonLoop wilson_loop(const KickedSpinModel& model, double r_start,
                       double r_end, int steps) {
    WilsonLoop loop;
    loop.r_start = r_start;
    loop.r_end = r_end;
    loop.steps = steps;
    loop.w = Mat2C::identity();
    if (r_start == r_end) return loop;

    const double span = std::abs(r_end - r_start);
    const int required = static_cast<int>(std::ceil(256.0 * span / kTwoPi));
    if (steps < required)
        throw std::invalid_argument(
            "wilson_loop: need at least 256 steps per 2*pi of path (" +
            std::to_string(required) + " here)");

    const double dr = (r_end - r_start) / steps;
    for (int k = 0; k < steps; ++k) {
        double mid = r_start + (k + 0.5) * dr;
        ConnectionSample s =
            connection_fd(model, mid, 1e-4, GaugeTag::parallel_transport);
        loop.w = loop.w * exp_i_hermitian(s.a, dr);
    }
    return loop;
}

} // namespace spinlab
