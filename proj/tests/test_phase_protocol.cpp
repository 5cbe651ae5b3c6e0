#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinlab/complexmat.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/phase_protocol.hpp"

using namespace spinlab;

namespace {

const KickedSpinModel kStd = KickedSpinModel::standard_model();
const std::array<cxd, 2> kEven{cxd{1.0 / std::sqrt(2.0), 0.0},
                               cxd{1.0 / std::sqrt(2.0), 0.0}};

} // namespace

TEST_CASE("uniform schedules step lambda by 2pi/M") {
    KickProtocol before = KickProtocol::uniform(4, 1.0);
    REQUIRE(before.lambda_schedule.size() == 4);
    for (int m = 0; m < 4; ++m)
        CHECK(before.lambda_schedule[m] ==
              doctest::Approx(kTwoPi * (m + 1) / 4.0).epsilon(1e-15));

    KickProtocol after = KickProtocol::uniform(4, 1.0, 1, 0.0, false);
    for (int m = 0; m < 4; ++m)
        CHECK(after.lambda_schedule[m] ==
              doctest::Approx(kTwoPi * m / 4.0).epsilon(1e-15));

    KickProtocol shifted = KickProtocol::uniform(3, 0.5, 2, 1.0);
    CHECK(shifted.start_lambda == 1.0);
    CHECK(shifted.cycles == 2);
    CHECK(shifted.lambda_schedule[2] == doctest::Approx(1.0 + kTwoPi).epsilon(1e-15));

    CHECK(KickProtocol::uniform(0, 1.0).lambda_schedule.empty());
    CHECK_THROWS_AS(KickProtocol::uniform(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(KickProtocol::uniform(4, 1.0, 0), std::invalid_argument);
}

TEST_CASE("dynamical phase difference is pi M T") {
    for (double period : {1.0, 0.5}) {
        for (int m = 1; m <= 64; ++m) {
            KickProtocol p = KickProtocol::uniform(m, period);
            double got = dynamical_phase_difference(p, kStd);
            CHECK(std::abs(got - kPi * m * period) < 1e-12);
        }
    }
    CHECK(dynamical_phase_difference(KickProtocol::uniform(0, 1.0), kStd) == 0.0);
}

TEST_CASE("choose_num_kicks finds the coherence point") {
    CHECK(choose_num_kicks(kStd, 1.0, 1) == 2);
    CHECK(choose_num_kicks(kStd, 0.5, 1) == 4);
    CHECK(choose_num_kicks(kStd, 1.0 / 50.0, 1) == 100);
    CHECK(choose_num_kicks(kStd, 1.0, 3) == 4);
    CHECK_THROWS_AS(choose_num_kicks(kStd, 1.0 / kPi, 1, 100), NoSolution);
    CHECK_THROWS_AS(choose_num_kicks(kStd, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(choose_num_kicks(kStd, 1.0, 5, 3), std::invalid_argument);
}

TEST_CASE("even kick counts are exactly coherent") {
    // The free factor squares to -I, so the kick rotations telescope and the
    // simulated product equals the adiabatic map up to rounding at any even M.
    for (int m : {64, 128, 256, 512}) {
        CycleResult res =
            simulate_cycle(kStd, KickProtocol::uniform(m, 1.0), kEven);
        CHECK(res.fidelity_vs_adiabatic > 1.0 - 1e-10);
        CHECK(std::abs(res.relative_phase) < 1e-12);
        CHECK(res.norm_defect < 1e-12);
    }
}

TEST_CASE("odd kick counts show the genuine adiabatic trend") {
    double prev = 0.0;
    for (int m : {33, 65, 129, 257}) {
        CycleResult res =
            simulate_cycle(kStd, KickProtocol::uniform(m, 1.0), kEven);
        CHECK(res.fidelity_vs_adiabatic > prev);
        CHECK(res.fidelity_vs_adiabatic < 1.0 - 1e-9);
        // Leftover dynamical mismatch pi M mod 2pi lands on the half turn.
        CHECK(ang_dist(res.relative_phase, kPi) < 1e-9);
        prev = res.fidelity_vs_adiabatic;
    }
    CHECK(prev > 0.9999);
}

TEST_CASE("a long even protocol transports a single branch faithfully") {
    std::array<cxd, 2> one{cxd{1.0, 0.0}, cxd{0.0, 0.0}};
    CycleResult res =
        simulate_cycle(kStd, KickProtocol::uniform(4096, 1.0), one);
    CHECK(res.fidelity_vs_adiabatic > 1.0 - 1e-9);
    CHECK(std::abs(res.final_amplitudes[0]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(res.final_amplitudes[1]) < 1e-6);
    CHECK(res.relative_phase == 0.0);  // undefined ratio falls back to zero
}

TEST_CASE("two cycles of an odd protocol are exact again") {
    CycleResult res =
        simulate_cycle(kStd, KickProtocol::uniform(3, 1.0, 2), kEven);
    CHECK(res.fidelity_vs_adiabatic > 1.0 - 1e-10);
    CHECK(std::abs(res.relative_phase) < 1e-10);
}

TEST_CASE("empty protocol is the identity") {
    CycleResult res = simulate_cycle(kStd, KickProtocol::uniform(0, 1.0), kEven);
    CHECK(res.fidelity_vs_adiabatic == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(res.relative_phase == 0.0);
    CHECK(res.norm_defect < 1e-15);
}

TEST_CASE("simulate_cycle validates its inputs") {
    std::array<cxd, 2> unnormalized{cxd{1.0, 0.0}, cxd{1.0, 0.0}};
    CHECK_THROWS_AS(
        simulate_cycle(kStd, KickProtocol::uniform(4, 1.0), unnormalized),
        std::invalid_argument);

    KickProtocol broken = KickProtocol::uniform(4, 1.0);
    broken.lambda_schedule.pop_back();
    CHECK_THROWS_AS(simulate_cycle(kStd, broken, kEven), std::invalid_argument);

    KickProtocol no_cycle = KickProtocol::uniform(4, 1.0);
    no_cycle.cycles = 0;
    CHECK_THROWS_AS(simulate_cycle(kStd, no_cycle, kEven), std::invalid_argument);
}

TEST_CASE("predicted cycle map for M=2 is the pinned branch swap") {
    Mat2C map = predicted_cycle_map(kStd, KickProtocol::uniform(2, 1.0));
    CHECK(std::abs(map.a00) < 1e-12);
    CHECK(std::abs(map.a11) < 1e-12);
    CHECK(std::abs(map.a01 - cxd{0.0, -1.0}) < 1e-12);
    CHECK(std::abs(map.a10 - cxd{0.0, 1.0}) < 1e-12);
    CHECK(map.is_unitary(1e-12));
}

TEST_CASE("predicted cycle map for two cycles of M=3 is minus identity") {
    Mat2C map = predicted_cycle_map(kStd, KickProtocol::uniform(3, 1.0, 2));
    CHECK((map + Mat2C::identity()).max_abs() < 1e-10);
}

TEST_CASE("predicted cycle map needs the standard model") {
    KickedSpinModel generic =
        KickedSpinModel::rank1(Mat2C::identity(), kStd.kick_direction);
    CHECK_THROWS_AS(predicted_cycle_map(generic, KickProtocol::uniform(4, 1.0)),
                    UnsupportedModel);
}

TEST_CASE("predicted map for the empty protocol is the identity") {
    Mat2C map = predicted_cycle_map(kStd, KickProtocol::uniform(0, 1.0));
    CHECK((map - Mat2C::identity()).max_abs() == 0.0);
}
