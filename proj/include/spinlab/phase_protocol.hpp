#pragma once

#include <array>
#include <vector>

#include "spinlab/complexmat.hpp"
#include "spinlab/kicked_spin.hpp"

namespace spinlab {

// Stepped-parameter kick schedule. lambda_schedule[m] is the lambda in effect
// for kick m+1 within one cycle; each later cycle repeats the schedule with
// the winding continued by 2 pi. The uniform factory steps lambda by 2 pi / M
// before each kick (kick m at start + m 2 pi / M), or after each kick when
// step_before_kick is false (kick m at start + (m-1) 2 pi / M).
// num_kicks = 0 is the explicit empty protocol.
struct KickProtocol {
    int num_kicks = 0;
    double period = 1.0;
    std::vector<double> lambda_schedule;
    int cycles = 1;
    double start_lambda = 0.0;
    bool step_before_kick = true;

    static KickProtocol uniform(int num_kicks, double period, int cycles = 1,
                                double start_lambda = 0.0,
                                bool step_before_kick = true);
};

// Outcome of driving a two-component state through the full protocol.
// final_amplitudes are taken against the parallel-transported eigenbasis, so
// the ideal adiabatic prediction is diag(e^{-i Theta_s}) on the initial
// amplitudes; relative_phase is arg(b1 conj b0) - arg(a1 conj a0) wrapped to
// [-pi, pi) (0 when either ratio is undefined).
struct CycleResult {
    std::array<cxd, 2> final_amplitudes{cxd{0.0, 0.0}, cxd{0.0, 0.0}};
    double fidelity_vs_adiabatic = 0.0;
    double relative_phase = 0.0;
    double norm_defect = 0.0;
};

// Sum over kicks of (E1 - E0)(lambda_m) * T with unwrapped branch energies,
// branches anchored ascending at start_lambda. Empty protocol returns 0.
double dynamical_phase_difference(const KickProtocol& protocol,
                                  const KickedSpinModel& model);

// Smallest M >= m_min whose uniform protocol phase difference is an integer
// multiple of 2 pi (|wrapped| < 1e-9). Throws NoSolution past `cap`.
int choose_num_kicks(const KickedSpinModel& model, double period, int m_min,
                     long cap = 1000000);

// Drive `initial` (amplitudes in the start-point eigenbasis, unit norm)
// through every kick of the protocol and report against the adiabatic ideal.
CycleResult simulate_cycle(const KickedSpinModel& model,
                           const KickProtocol& protocol,
                           const std::array<cxd, 2>& initial);

// Ideal adiabatic map over the whole protocol, in the start-point eigenbasis:
// column s carries sign_s e^{-i Theta_s} into row sigma(s), with permutation
// and signs from branch continuation. Standard model only.
Mat2C predicted_cycle_map(const KickedSpinModel& model,
                          const KickProtocol& protocol);

} // namespace spinlab
