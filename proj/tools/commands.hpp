#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinlab/complexmat.hpp"

namespace spinlab::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

// Output-path problems (unwritable directory, failed write). Mapped to exit
// code 4 by main.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options shared by every subcommand.
struct CommonConfig {
    std::string out_dir = ".";
    std::string format = "both";  // csv | json | both
    std::uint64_t seed = kDefaultSeed;
    bool plotdata = false;
};

struct SpectrumParams {
    double lambda_start = 0.0;
    double lambda_end = kTwoPi;
    int steps = 256;
};

struct CycleParams {
    int steps = 512;
    int cycles = 1;
};

struct ConnectionParams {
    bool single = false;  // set when --r was given
    double r = 0.0;
    double r_start = 0.0;
    double r_end = 2.0 * kTwoPi;
    int r_steps = 64;
    double h = 1e-4;
    std::vector<std::string> gauges{"real", "parallel", "kick"};
    bool wilson = false;
    int wilson_steps = 2048;
};

struct ProtocolParams {
    int num_kicks = 64;
    double period = 1.0;
    int cycles = 1;
    // Branch amplitudes at the protocol start: re0, im0, re1, im1.
    std::vector<double> initial{1.0 / 1.4142135623730951, 0.0,
                                1.0 / 1.4142135623730951, 0.0};
    int choose_min = 0;  // 0 = skip the choose_num_kicks report
    bool fidelity_table = false;
};

struct MobileParams {
    int n_points = 64;
    double mass = 1.0;
    std::string mode = "both";  // spectral | conjugated | both
    int offset_plus = 0;
    int offset_minus = 0;
    bool allow_misaligned = false;
    bool single_exp = false;
};

void cmd_spectrum(const CommonConfig& common, const SpectrumParams& params);
void cmd_cycle(const CommonConfig& common, const CycleParams& params);
void cmd_connection(const CommonConfig& common, const ConnectionParams& params);
void cmd_protocol(const CommonConfig& common, const ProtocolParams& params);
void cmd_mobile(const CommonConfig& common, const MobileParams& params);

} // namespace spinlab::cli
