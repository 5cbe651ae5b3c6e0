// spinlab: command-line front end for the kicked-spin laboratory. Subcommands
// run one experiment family each and write CSV/JSON (plus gnuplot-ready .dat
// files with --plotdata) into --out. Exit codes: 0 success, 2 invalid
// config/arguments, 3 numeric failure, 4 io-error.

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"
#include "spinlab/errors.hpp"

using namespace spinlab;
using namespace spinlab::cli;

int main(int argc, char** argv) {
    CLI::App app{"kicked spin-1/2 laboratory"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value configuration file");
    app.allow_config_extras(false);

    CommonConfig common;
    app.add_option("--out", common.out_dir, "output directory")
        ->capture_default_str();
    app.add_option("--format", common.format, "output formats")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    app.add_option("--seed", common.seed,
                   "PRNG seed for randomized fixtures (default 42)")
        ->capture_default_str();
    app.add_flag("--plotdata", common.plotdata,
                 "emit two-column gnuplot data next to the CSV");

    SpectrumParams spectrum;
    CLI::App* spec_cmd =
        app.add_subcommand("spectrum", "quasienergy branches over a lambda sweep");
    spec_cmd->fallthrough();
    spec_cmd->add_option("--lambda-start", spectrum.lambda_start, "sweep start")
        ->capture_default_str();
    spec_cmd->add_option("--lambda-end", spectrum.lambda_end, "sweep end")
        ->capture_default_str();
    spec_cmd->add_option("--steps", spectrum.steps, "sweep intervals")
        ->capture_default_str();

    CycleParams cycle;
    CLI::App* cycle_cmd =
        app.add_subcommand("cycle", "branch permutation over closed 2pi cycles");
    cycle_cmd->fallthrough();
    cycle_cmd->add_option("--steps", cycle.steps, "continuation steps (>= 64 per cycle)")
        ->capture_default_str();
    cycle_cmd->add_option("--cycles", cycle.cycles, "number of 2pi cycles")
        ->capture_default_str();

    ConnectionParams connection;
    CLI::App* conn_cmd =
        app.add_subcommand("connection", "Mead-Berry connection and Wilson loops");
    conn_cmd->fallthrough();
    CLI::Option* r_opt =
        conn_cmd->add_option("--r", connection.r, "single sample point");
    conn_cmd->add_option("--r-start", connection.r_start, "sweep start")
        ->capture_default_str();
    conn_cmd->add_option("--r-end", connection.r_end, "sweep end")
        ->capture_default_str();
    conn_cmd->add_option("--r-steps", connection.r_steps, "sweep intervals")
        ->capture_default_str();
    conn_cmd->add_option("--fd-step", connection.h, "finite-difference spacing")
        ->capture_default_str();
    conn_cmd
        ->add_option("--gauges", connection.gauges,
                     "gauges to sample (real, parallel, kick)")
        ->delimiter(',')
        ->capture_default_str();
    conn_cmd->add_flag("--wilson", connection.wilson, "accumulate the Wilson loop");
    conn_cmd->add_option("--wilson-steps", connection.wilson_steps,
                         "Wilson path samples (>= 256 per 2pi)")
        ->capture_default_str();

    ProtocolParams protocol;
    CLI::App* proto_cmd =
        app.add_subcommand("protocol", "stepped-parameter coherence protocol");
    proto_cmd->fallthrough();
    proto_cmd->add_option("--num-kicks", protocol.num_kicks, "kicks per cycle")
        ->capture_default_str();
    proto_cmd->add_option("--period", protocol.period, "kick period T")
        ->capture_default_str();
    proto_cmd->add_option("--cycles", protocol.cycles, "protocol cycles")
        ->capture_default_str();
    proto_cmd
        ->add_option("--initial", protocol.initial,
                     "initial branch amplitudes re0 im0 re1 im1")
        ->expected(4)
        ->delimiter(',');
    proto_cmd->add_option(
        "--choose-min", protocol.choose_min,
        "report the smallest coherent kick count >= this (0 = skip)");
    proto_cmd->add_flag("--fidelity-table", protocol.fidelity_table,
                        "simulate M = 64, 128, 256, 512 and tabulate");

    MobileParams mobile;
    CLI::App* mobile_cmd =
        app.add_subcommand("mobile", "mobile kicked spin on the 4pi grid");
    mobile_cmd->fallthrough();
    mobile_cmd->add_option("--n-points", mobile.n_points, "grid points (power of two)")
        ->capture_default_str();
    mobile_cmd->add_option("--mass", mobile.mass, "kinetic mass")
        ->capture_default_str();
    mobile_cmd->add_option("--mode", mobile.mode, "moving-frame assembly")
        ->check(CLI::IsMember({"spectral", "conjugated", "both"}))
        ->capture_default_str();
    mobile_cmd->add_option("--offset-plus", mobile.offset_plus,
                           "plus-sector window offset")
        ->capture_default_str();
    mobile_cmd->add_option("--offset-minus", mobile.offset_minus,
                           "minus-sector window offset")
        ->capture_default_str();
    mobile_cmd->add_flag("--allow-misaligned", mobile.allow_misaligned,
                         "permit nonzero window offsets (demonstration)");
    mobile_cmd->add_flag("--single-exp", mobile.single_exp,
                         "also diagonalize the single-exponential reading");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        app.exit(e);
        return 2;
    }

    try {
        connection.single = r_opt->count() > 0;
        if (spec_cmd->parsed()) cmd_spectrum(common, spectrum);
        if (cycle_cmd->parsed()) cmd_cycle(common, cycle);
        if (conn_cmd->parsed()) cmd_connection(common, connection);
        if (proto_cmd->parsed()) cmd_protocol(common, protocol);
        if (mobile_cmd->parsed()) cmd_mobile(common, mobile);
    } catch (const WindowError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
