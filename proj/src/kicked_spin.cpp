#include "spinlab/kicked_spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vec2C normalized_or_throw(const Vec2C& v) {
    double n = v.norm();
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("kick_direction must be unit norm");
    return v;
}

} // namespace

KickedSpinModel KickedSpinModel::standard_model() {
    KickedSpinModel m;
    m.free_half_angle = kPi / 2.0;
    m.free_factor = {cxd{0.0, -1.0}, cxd{0.0, 0.0}, cxd{0.0, 0.0}, cxd{0.0, 1.0}};
    m.kick_direction = Vec2C{cxd{kInvSqrt2, 0.0}, cxd{0.0, -kInvSqrt2}};
    m.kick_rank1 = true;
    m.standard = true;
    return m;
}

KickedSpinModel KickedSpinModel::rank1(const Mat2C& u0, const Vec2C& v) {
    if (!u0.is_unitary(1e-12))
        throw std::invalid_argument("free factor must be unitary");
    KickedSpinModel m;
    m.free_factor = u0;
    m.free_half_angle = 0.0;
    m.kick_direction = normalized_or_throw(v);
    m.kick_rank1 = true;
    m.standard = false;
    return m;
}

Mat2C build_floquet(const KickedSpinModel& model, double lambda) {
    if (!model.kick_rank1)
        throw UnsupportedModel("build_floquet: only rank-1 kicks are supported");
    const Vec2C& v = model.kick_direction;
    cxd w = std::exp(cxd(0.0, -lambda)) - 1.0;
    Mat2C kick = Mat2C::identity() + outer(v, v).scaled(w);
    return model.free_factor * kick;
}

Vec2C gauge_fix(const Vec2C& v) {
    double m0 = std::abs(v.v0);
    double m1 = std::abs(v.v1);
    const cxd& lead = (m1 > m0 + 1e-12) ? v.v1 : v.v0;
    double ml = std::abs(lead);
    if (ml == 0.0) return v;
    cxd phase = std::conj(lead) / ml;
    return v.scaled(phase);
}

QuasiPair quasi_eigensystem(const Mat2C& u) {
    if (!u.is_unitary(1e-10))
        throw std::invalid_argument("quasi_eigensystem: input not unitary");

    cxd tr = u.trace();
    cxd det = u.det();
    cxd disc = std::sqrt(tr * tr - 4.0 * det);
    // pick the root maximizing |tr + disc| to avoid cancellation
    if (std::norm(tr + disc) < std::norm(tr - disc)) disc = -disc;
    cxd z0 = 0.5 * (tr + disc);
    cxd z1 = det / z0;

    auto eigvec = [&](cxd z) -> Vec2C {
        Vec2C r0{u.a01, z - u.a00};
        Vec2C r1{z - u.a11, u.a10};
        Vec2C v = (r0.norm() >= r1.norm()) ? r0 : r1;
        double n = v.norm();
        if (n < 1e-14) return Vec2C{cxd{1.0, 0.0}, cxd{0.0, 0.0}};
        return v.scaled(1.0 / n);
    };

    Vec2C v0 = eigvec(z0);
    Vec2C v1 = eigvec(z1);
    if (std::abs(z0 - z1) < 1e-14) {
        // scalar operator: any basis works
        v0 = Vec2C{cxd{1.0, 0.0}, cxd{0.0, 0.0}};
        v1 = Vec2C{cxd{0.0, 0.0}, cxd{1.0, 0.0}};
    } else {
        // clean residual non-orthogonality off the second vector
        cxd ov = v0.dot(v1);
        v1 = v1 + v0.scaled(-ov);
        v1 = v1.scaled(1.0 / v1.norm());
    }

    double e0 = wrap_angle(std::atan2(-z0.imag(), z0.real()));
    double e1 = wrap_angle(std::atan2(-z1.imag(), z1.real()));

    QuasiPair out;
    if (e0 <= e1) {
        out.phases = {e0, e1};
        out.vectors = {gauge_fix(v0), gauge_fix(v1)};
    } else {
        out.phases = {e1, e0};
        out.vectors = {gauge_fix(v1), gauge_fix(v0)};
    }
    return out;
}

BranchStep continue_step(const KickedSpinModel& model, double lambda,
                         const std::array<double, 2>& prev_energies,
                         const std::array<Vec2C, 2>& prev_vectors) {
    QuasiPair cand = quasi_eigensystem(build_floquet(model, lambda));
    BranchStep out;
    bool taken[2] = {false, false};
    for (int s = 0; s < 2; ++s) {
        cxd ov0 = prev_vectors[s].dot(cand.vectors[0]);
        cxd ov1 = prev_vectors[s].dot(cand.vectors[1]);
        double m0 = std::abs(ov0), m1 = std::abs(ov1);
        if (std::abs(m0 - m1) < 0.1)
            throw ContinuationFailure(
                "continuation: ambiguous branch match at lambda = " +
                std::to_string(lambda));
        int j = (m0 > m1) ? 0 : 1;
        if (taken[j])
            throw ContinuationFailure(
                "continuation: branch collision at lambda = " +
                std::to_string(lambda));
        taken[j] = true;
        cxd ov = (j == 0) ? ov0 : ov1;
        out.vectors[s] = cand.vectors[j].scaled(std::conj(ov) / std::abs(ov));

        double e = prev_energies[s] +
                   std::remainder(cand.phases[j] - prev_energies[s], kTwoPi);
        if (std::abs(e - prev_energies[s]) >= kPi / 4.0)
            throw ContinuationFailure(
                "continuation: quasienergy step >= pi/4 at lambda = " +
                std::to_string(lambda) + " (increase steps)");
        out.energies[s] = e;
    }
    return out;
}

CyclePermutation match_frames(const std::array<Vec2C, 2>& reference,
                              const std::array<Vec2C, 2>& vectors,
                              double where) {
    CyclePermutation perm;
    bool taken[2] = {false, false};
    for (int s = 0; s < 2; ++s) {
        cxd ov0 = reference[0].dot(vectors[s]);
        cxd ov1 = reference[1].dot(vectors[s]);
        double m0 = std::abs(ov0), m1 = std::abs(ov1);
        if (std::abs(m0 - m1) < 0.1)
            throw ContinuationFailure(
                "continuation: ambiguous final-state match at lambda = " +
                std::to_string(where));
        int t = (m0 > m1) ? 0 : 1;
        if (taken[t])
            throw ContinuationFailure(
                "continuation: final-state collision at lambda = " +
                std::to_string(where));
        taken[t] = true;
        cxd ov = (t == 0) ? ov0 : ov1;
        perm.mapping[s] = t;
        perm.branch_signs[s] = (ov.real() >= 0.0) ? 1.0 : -1.0;
    }
    return perm;
}

ContinuationResult continue_branches(const KickedSpinModel& model,
                                     double lambda_start, double lambda_end,
                                     int steps) {
    if (steps < 0) throw std::invalid_argument("continue_branches: steps < 0");
    if (lambda_start != lambda_end && steps < 1)
        throw std::invalid_argument("continue_branches: steps < 1 on a non-empty sweep");

    const int n = (lambda_start == lambda_end) ? 0 : steps;
    const double dl = (n > 0) ? (lambda_end - lambda_start) / n : 0.0;

    QuasiPair anchor = quasi_eigensystem(build_floquet(model, lambda_start));

    ContinuationResult res;
    for (int s = 0; s < 2; ++s) {
        res.branches[s].label = s;
        res.branches[s].lambdas.reserve(n + 1);
        res.branches[s].energies.reserve(n + 1);
        res.branches[s].vectors.reserve(n + 1);
        res.branches[s].lambdas.push_back(lambda_start);
        res.branches[s].energies.push_back(anchor.phases[s]);
        res.branches[s].vectors.push_back(anchor.vectors[s]);
    }

    std::array<double, 2> energies = anchor.phases;
    std::array<Vec2C, 2> vectors = anchor.vectors;
    for (int k = 1; k <= n; ++k) {
        double lam = lambda_start + k * dl;
        BranchStep step = continue_step(model, lam, energies, vectors);
        energies = step.energies;
        vectors = step.vectors;
        for (int s = 0; s < 2; ++s) {
            res.branches[s].lambdas.push_back(lam);
            res.branches[s].energies.push_back(step.energies[s]);
            res.branches[s].vectors.push_back(step.vectors[s]);
        }
    }

    res.permutation = match_frames(anchor.vectors, vectors, lambda_end);
    return res;
}

AnalyticBranches analytic_branches(const KickedSpinModel& model, double lambda) {
    if (!model.standard)
        throw UnsupportedModel("analytic_branches: closed forms exist only for the standard model");
    AnalyticBranches b;
    b.e0 = lambda / 2.0 - kPi / 2.0;
    b.e1 = lambda / 2.0 + kPi / 2.0;
    double c = std::cos(lambda / 4.0), s = std::sin(lambda / 4.0);
    b.vec0 = Vec2C{cxd{-s, 0.0}, cxd{c, 0.0}};
    b.vec1 = Vec2C{cxd{c, 0.0}, cxd{s, 0.0}};
    return b;
}

} // namespace spinlab
