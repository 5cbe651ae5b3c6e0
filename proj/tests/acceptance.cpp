// Acceptance gate: runs the seven headline checks end to end and prints one
// PASS/FAIL line per criterion (details indented). Exit status is the number
// of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "spinlab/complexmat.hpp"
#include "spinlab/connection.hpp"
#include "spinlab/densemat.hpp"
#include "spinlab/dft.hpp"
#include "spinlab/eigen.hpp"
#include "spinlab/kicked_spin.hpp"
#include "spinlab/mobile_spin.hpp"
#include "spinlab/phase_protocol.hpp"
#include "spinlab/rng.hpp"

using namespace spinlab;

namespace {

const KickedSpinModel kStd = KickedSpinModel::standard_model();
const cxd kI{0.0, 1.0};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        pass = pass && ok;
    }
    void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", x);
    return buf;
}

double now_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Outcome criterion_connection_values() {
    Outcome out;
    const double rs[10] = {0.2, 0.9, 1.6, 2.8, 4.1, 5.5, 7.3, 9.0, 10.6, 12.2};
    double worst_an = 0.0, worst_fd = 0.0;
    for (double r : rs) {
        ConnectionSample an = connection_analytic(kStd, r);
        worst_an = std::max({worst_an, std::abs(an.a.a00), std::abs(an.a.a11),
                             std::abs(an.a.a01 + kI * 0.25),
                             std::abs(an.a.a10 - kI * 0.25)});
        ConnectionSample fd = connection_fd(kStd, r, 1e-4);
        worst_fd = std::max({worst_fd, std::abs(fd.a.a00), std::abs(fd.a.a11),
                             std::abs(fd.a.a01 + kI * 0.25),
                             std::abs(fd.a.a10 - kI * 0.25)});
    }
    out.require(worst_an < 1e-12,
                "analytic A = {0, -i/4; +i/4, 0} at 10 points, max err " +
                    sci(worst_an) + " < 1e-12");
    out.require(worst_fd < 1e-7,
                "finite difference (h=1e-4) max err " + sci(worst_fd) +
                    " < 1e-7");
    return out;
}

Outcome criterion_anholonomy() {
    Outcome out;
    ContinuationResult one = continue_branches(kStd, 0.0, kTwoPi, 4096);
    out.require(one.permutation.mapping[0] == 1 && one.permutation.mapping[1] == 0,
                "2pi sweep permutation is the swap");
    ContinuationResult two = continue_branches(kStd, 0.0, 2.0 * kTwoPi, 4096);
    out.require(two.permutation.mapping[0] == 0 && two.permutation.mapping[1] == 1 &&
                    two.permutation.branch_signs[0] == -1.0 &&
                    two.permutation.branch_signs[1] == -1.0,
                "4pi sweep is the identity with branch signs (-1, -1)");
    WilsonLoop loop = wilson_loop(kStd, 0.0, 2.0 * kTwoPi, 2048);
    double err = (loop.w + Mat2C::identity()).max_abs();
    out.require(err < 1e-6, "Wilson loop over 4pi vs -1: " + sci(err) + " < 1e-6");
    return out;
}

Outcome criterion_phase_coherence() {
    Outcome out;
    double worst_phase = 0.0;
    for (double period : {1.0, 0.5})
        for (int m = 1; m <= 64; ++m) {
            double got = dynamical_phase_difference(
                KickProtocol::uniform(m, period), kStd);
            worst_phase = std::max(worst_phase, std::abs(got - kPi * m * period));
        }
    out.require(worst_phase < 1e-12,
                "dynamical phase difference = pi*M*T (M=1..64, T=1,1/2), max err " +
                    sci(worst_phase));
    int chosen = choose_num_kicks(kStd, 1.0, 1);
    out.require(chosen == 2, "choose_num_kicks(T=1) = " + std::to_string(chosen) +
                                 " (want 2)");

    const int ms[4] = {64, 128, 256, 512};
    double fid[4], rel[4], worst_norm = 0.0;
    const std::array<cxd, 2> init{cxd{1.0 / std::sqrt(2.0), 0.0},
                                  cxd{1.0 / std::sqrt(2.0), 0.0}};
    for (int k = 0; k < 4; ++k) {
        CycleResult res = simulate_cycle(kStd, KickProtocol::uniform(ms[k], 1.0), init);
        fid[k] = res.fidelity_vs_adiabatic;
        rel[k] = std::abs(res.relative_phase);
        worst_norm = std::max(worst_norm, res.norm_defect);
    }
    out.require(worst_norm < 1e-12, "norm defect " + sci(worst_norm) + " < 1e-12");

    bool decreasing = rel[0] > rel[1] && rel[1] > rel[2] && rel[2] > rel[3];
    out.require(decreasing,
                "relative phase decreasing across M=64,128,256,512: " + sci(rel[0]) +
                    ", " + sci(rel[1]) + ", " + sci(rel[2]) + ", " + sci(rel[3]));
    out.require(fid[3] > fid[0], "fidelity(512) > fidelity(64): 1-" + sci(1.0 - fid[3]) +
                                     " vs 1-" + sci(1.0 - fid[0]));
    if (!decreasing || fid[3] <= fid[0]) {
        out.note("even kick counts are exactly coherent for this model: the free");
        out.note("factor squares to -1, the kick rotations telescope, and the kick");
        out.note("product equals the adiabatic map in exact arithmetic at every even");
        out.note("M. Both trend quantities are pure rounding residue (~1e-13 in the");
        out.note("fidelity, ~1e-15 in the phase) with no physical decrease to observe;");
        out.note("the genuine adiabatic trend exists at odd M and is pinned by the");
        out.note("unit suite. See README, section \"Phase coherence\".");
    }
    return out;
}

Outcome criterion_moving_frame() {
    Outcome out;
    double worst_spec = 0.0, worst_conj = 0.0;
    for (int n : {16, 32, 64})
        for (double mass : {0.5, 1.0, 5.0}) {
            GridSpec g;
            g.n_points = n;
            g.period = 2.0 * kTwoPi;
            g.mass = mass;
            worst_spec = std::max(worst_spec, compare_frames(g).matching_distance);
            auto lab = unitary_eigensystem(build_lab_floquet(g));
            auto conj = unitary_eigensystem(
                build_moving_frame_floquet(g, FrameMode::conjugated));
            worst_conj =
                std::max(worst_conj, match_phase_sets(lab.values, conj.values));
        }
    out.require(worst_spec < 1e-8,
                "spectral mode, aligned windows: max matching distance " +
                    sci(worst_spec) + " < 1e-8");
    out.require(worst_conj < 1e-10, "conjugated mode: max matching distance " +
                                        sci(worst_conj) + " < 1e-10");
    return out;
}

Outcome criterion_closed_form_spectrum() {
    Outcome out;
    double worst_e = 0.0, worst_det = 0.0, worst_tr = 0.0;
    for (int k = 0; k < 1000; ++k) {
        double lambda = -kTwoPi + k * (4.0 * kTwoPi / 1000.0);
        Mat2C u = build_floquet(kStd, lambda);
        QuasiPair qp = quasi_eigensystem(u);
        double w0 = wrap_angle(lambda / 2.0 - kPi / 2.0);
        double w1 = wrap_angle(lambda / 2.0 + kPi / 2.0);
        double lo = std::min(w0, w1), hi = std::max(w0, w1);
        worst_e = std::max({worst_e, ang_dist(qp.phases[0], lo),
                            ang_dist(qp.phases[1], hi)});
        worst_det = std::max(worst_det,
                             std::abs(u.det() - std::polar(1.0, -lambda)));
        worst_tr = std::max(worst_tr, std::abs(u.trace()));
    }
    out.require(worst_e < 1e-10, "E = lambda/2 -+ pi/2 (mod 2pi) at 1000 points, max err " +
                                     sci(worst_e));
    out.require(worst_det < 1e-12 && worst_tr < 1e-12,
                "det = e^{-i lambda}, tr = 0: max err " +
                    sci(std::max(worst_det, worst_tr)));
    return out;
}

Outcome criterion_kernels() {
    Outcome out;

    SplitMix64 rng(5150);
    const std::size_t n = 512;
    DenseMat q = random_unitary(n, rng);
    std::vector<double> phases(n);
    for (auto& p : phases) p = wrap_angle(rng.uniform() * kTwoPi);
    std::sort(phases.begin(), phases.end());
    DenseMat u(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cxd s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                s += q.at(i, k) * std::polar(1.0, -phases[k]) * std::conj(q.at(j, k));
            u.at(i, j) = s;
        }
    auto eig = unitary_eigensystem(u);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, ang_dist(eig.values[k], phases[k]));
    out.require(worst < 1e-9,
                "512-dim construct-recover eigenphase error " + sci(worst) + " < 1e-9");

    std::vector<cxd> x(1024);
    for (auto& z : x) z = cxd{rng.gaussian(), rng.gaussian()};
    auto back = dft_inverse(dft_forward(x));
    double rt = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        rt = std::max(rt, std::abs(back[j] - x[j]));
    out.require(rt < 1e-12, "DFT round trip (N=1024) " + sci(rt) + " < 1e-12");

    GridSpec g;
    g.n_points = 64;
    g.period = 2.0 * kTwoPi;
    g.mass = 1.0;
    LabState st;
    st.amplitudes.resize(2 * g.n_points);
    double nrm = 0.0;
    for (auto& z : st.amplitudes) {
        z = cxd{rng.gaussian(), rng.gaussian()};
        nrm += std::norm(z);
    }
    for (auto& z : st.amplitudes) z /= std::sqrt(nrm);
    auto dense = build_lab_floquet(g).apply(st.amplitudes);
    auto split = apply_lab_floquet(g, st);
    double sd = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i)
        sd = std::max(sd, std::abs(split.amplitudes[i] - dense[i]));
    out.require(sd < 1e-10, "split-step vs dense application " + sci(sd) + " < 1e-10");
    return out;
}

Outcome criterion_gauge_report() {
    Outcome out;
    const GaugeTag gauges[3] = {GaugeTag::real_gauge, GaugeTag::parallel_transport,
                                GaugeTag::kick_component_real};
    double worst_off = 0.0, worst_real_diag = 0.0, worst_kick_diag = 0.0;
    for (double r : {0.8, 2.0, 5.0}) {
        for (GaugeTag g : gauges) {
            ConnectionSample s = connection_fd(kStd, r, 1e-4, g);
            worst_off = std::max({worst_off, std::abs(std::abs(s.a.a01) - 0.25),
                                  std::abs(std::abs(s.a.a10) - 0.25)});
            if (g == GaugeTag::real_gauge)
                worst_real_diag = std::max({worst_real_diag, std::abs(s.a.a00),
                                            std::abs(s.a.a11)});
            if (g == GaugeTag::kick_component_real)
                worst_kick_diag =
                    std::max({worst_kick_diag, std::abs(std::abs(s.a.a00) - 0.25),
                              std::abs(std::abs(s.a.a11) - 0.25)});
        }
    }
    out.require(worst_off < 1e-6,
                "|A01| = |A10| = 1/4 in all three gauges, max err " + sci(worst_off));
    out.require(worst_real_diag < 1e-9,
                "real gauge diagonal vanishes, max " + sci(worst_real_diag));
    out.require(worst_kick_diag < 1e-6,
                "kick gauge diagonal magnitude 1/4, max err " + sci(worst_kick_diag));
    return out;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*run)();
        double limit_seconds;
    };
    const Entry entries[7] = {
        {"connection values", criterion_connection_values, 1.0},
        {"anholonomy permutation", criterion_anholonomy, 5.0},
        {"phase coherence", criterion_phase_coherence, 30.0},
        {"moving-frame equivalence", criterion_moving_frame, 120.0},
        {"closed-form spectrum", criterion_closed_form_spectrum, 0.0},
        {"kernel correctness", criterion_kernels, 0.0},
        {"gauge-dependence report", criterion_gauge_report, 0.0},
    };

    int failures = 0;
    for (int i = 0; i < 7; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = entries[i].run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.notes.push_back(std::string("FAIL threw: ") + e.what());
        }
        double dt = now_seconds(t0);
        if (entries[i].limit_seconds > 0.0 && dt > entries[i].limit_seconds) {
            out.pass = false;
            out.notes.push_back("FAIL runtime " + sci(dt) + " s over the " +
                                sci(entries[i].limit_seconds) + " s budget");
        }
        std::printf("%d %-26s %s  (%.2f s)\n", i + 1, entries[i].name,
                    out.pass ? "PASS" : "FAIL", dt);
        for (const auto& line : out.notes)
            std::printf("    %s\n", line.c_str());
        if (!out.pass) ++failures;
    }
    std::printf("%d of 7 criteria passed\n", 7 - failures);
    return failures;
}
