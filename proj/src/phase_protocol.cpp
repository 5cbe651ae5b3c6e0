#include "spinlab/phase_protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

void validate_protocol(const KickProtocol& p) {
    if (p.num_kicks < 0)
        throw std::invalid_argument("protocol: num_kicks < 0");
    if (p.lambda_schedule.size() != static_cast<std::size_t>(p.num_kicks))
        throw std::invalid_argument("protocol: schedule length != num_kicks");
    if (p.cycles < 1)
        throw std::invalid_argument("protocol: cycles < 1");
}

// Continuation walk along the wound schedule. Collects unwrapped branch
// energies at every kick, the transported frame at the end, and the
// final-vs-initial permutation. Branch labels anchor ascending at
// start_lambda (standard model anchored at 0: branch 0 is lambda/2 - pi/2).
struct WalkOutcome {
    std::array<double, 2> theta{0.0, 0.0};  // sum_m E_s(lambda_m) * T
    std::array<Vec2C, 2> initial_vectors;
    std::array<Vec2C, 2> final_vectors;
    double final_lambda = 0.0;
};

WalkOutcome walk_schedule(const KickedSpinModel& model, const KickProtocol& p) {
    QuasiPair anchor = quasi_eigensystem(build_floquet(model, p.start_lambda));
    WalkOutcome out;
    out.initial_vectors = anchor.vectors;
    out.final_vectors = anchor.vectors;

    std::array<double, 2> energies = anchor.phases;
    std::array<Vec2C, 2> vectors = anchor.vectors;
    double current = p.start_lambda;

    for (int c = 0; c < p.cycles; ++c) {
        for (int m = 0; m < p.num_kicks; ++m) {
            double target = p.lambda_schedule[m] + kTwoPi * c;
            double span = target - current;
            int sub = std::max(1, static_cast<int>(std::ceil(std::abs(span) / (kPi / 32.0))));
            if (span == 0.0) sub = 0;
            for (int k = 1; k <= sub; ++k) {
                BranchStep step = continue_step(
                    model, current + span * k / sub, energies, vectors);
                energies = step.energies;
                vectors = step.vectors;
            }
            current = target;
            out.theta[0] += energies[0] * p.period;
            out.theta[1] += energies[1] * p.period;
        }
    }
    out.final_vectors = vectors;
    out.final_lambda = current;
    return out;
}

} // namespace

KickProtocol KickProtocol::uniform(int num_kicks, double period, int cycles,
                                   double start_lambda, bool step_before_kick) {
    if (num_kicks < 0)
        throw std::invalid_argument("uniform protocol: num_kicks < 0");
    if (cycles < 1)
        throw std::invalid_argument("uniform protocol: cycles < 1");
    KickProtocol p;
    p.num_kicks = num_kicks;
    p.period = period;
    p.cycles = cycles;
    p.start_lambda = start_lambda;
    p.step_before_kick = step_before_kick;
    p.lambda_schedule.reserve(num_kicks);
    for (int m = 0; m < num_kicks; ++m) {
        int steps_taken = step_before_kick ? m + 1 : m;
        p.lambda_schedule.push_back(start_lambda + kTwoPi * steps_taken / num_kicks);
    }
    return p;
}

double dynamical_phase_difference(const KickProtocol& protocol,
                                  const KickedSpinModel& model) {
    validate_protocol(protocol);
    if (protocol.num_kicks == 0) return 0.0;
    WalkOutcome walk = walk_schedule(model, protocol);
    return walk.theta[1] - walk.theta[0];
}

int choose_num_kicks(const KickedSpinModel& model, double period, int m_min,
                     long cap) {
    if (m_min < 1)
        throw std::invalid_argument("choose_num_kicks: m_min < 1");
    if (cap < m_min)
        throw std::invalid_argument("choose_num_kicks: cap < m_min");
    for (long m = m_min; m <= cap; ++m) {
        double phase = dynamical_phase_difference(
            KickProtocol::uniform(static_cast<int>(m), period), model);
        if (std::abs(wrap_angle(phase)) < 1e-9) return static_cast<int>(m);
    }
    throw NoSolution("choose_num_kicks: no kick count below cap makes the phase a 2*pi multiple");
}

CycleResult simulate_cycle(const KickedSpinModel& model,
                           const KickProtocol& protocol,
                           const std::array<cxd, 2>& initial) {
    validate_protocol(protocol);
    double n0 = std::sqrt(std::norm(initial[0]) + std::norm(initial[1]));
    if (std::abs(n0 - 1.0) > 1e-12)
        throw std::invalid_argument("simulate_cycle: initial state not normalized");

    WalkOutcome walk = walk_schedule(model, protocol);

    Vec2C psi = walk.initial_vectors[0].scaled(initial[0]) +
                walk.initial_vectors[1].scaled(initial[1]);
    for (int c = 0; c < protocol.cycles; ++c)
        for (int m = 0; m < protocol.num_kicks; ++m)
            psi = build_floquet(model, protocol.lambda_schedule[m]) * psi;

    CycleResult res;
    res.norm_defect = std::abs(psi.norm() - 1.0);
    cxd b0 = walk.final_vectors[0].dot(psi);
    cxd b1 = walk.final_vectors[1].dot(psi);
    res.final_amplitudes = {b0, b1};

    cxd pred0 = initial[0] * std::exp(cxd(0.0, -walk.theta[0]));
    cxd pred1 = initial[1] * std::exp(cxd(0.0, -walk.theta[1]));
    res.fidelity_vs_adiabatic = std::norm(std::conj(pred0) * b0 + std::conj(pred1) * b1);

    cxd start_ratio = initial[1] * std::conj(initial[0]);
    cxd end_ratio = b1 * std::conj(b0);
    if (std::abs(start_ratio) < 1e-15 || std::abs(end_ratio) < 1e-15) {
        res.relative_phase = 0.0;
    } else {
        res.relative_phase =
            wrap_angle(std::arg(end_ratio) - std::arg(start_ratio));
    }
    return res;
}

Mat2C predicted_cycle_map(const KickedSpinModel& model,
                          const KickProtocol& protocol) {
    if (!model.standard)
        throw UnsupportedModel("predicted_cycle_map: closed forms exist only for the standard model");
    validate_protocol(protocol);
    Mat2C map = Mat2C::zero();
    if (protocol.num_kicks == 0) return Mat2C::identity();
    WalkOutcome walk = walk_schedule(model, protocol);
    CyclePermutation perm =
        match_frames(walk.initial_vectors, walk.final_vectors, walk.final_lambda);
    for (int s = 0; s < 2; ++s) {
        cxd entry = perm.branch_signs[s] * std::exp(cxd(0.0, -walk.theta[s]));
        int row = perm.mapping[s];
        if (row == 0 && s == 0) map.a00 = entry;
        if (row == 0 && s == 1) map.a01 = entry;
        if (row == 1 && s == 0) map.a10 = entry;
        if (row == 1 && s == 1) map.a11 = entry;
    }
    return map;
}

} // namespace spinlab
