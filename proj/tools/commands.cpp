#include "commands.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "spinlab/connection.hpp"
#include "spinlab/densemat.hpp"
#include "spinlab/eigen.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/kicked_spin.hpp"
#include "spinlab/mobile_spin.hpp"
#include "spinlab/phase_protocol.hpp"

namespace spinlab::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const KickedSpinModel kModel = KickedSpinModel::standard_model();

// 17 significant digits round-trip a 64-bit float exactly.
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

fs::path prepare_out_dir(const CommonConfig& common) {
    fs::path dir(common.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
    return dir;
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string());
    f << body;
    f.flush();
    if (!f) throw IoError("write failed for " + path.string());
    std::printf("wrote %s\n", path.string().c_str());
}

bool want_csv(const CommonConfig& c) { return c.format != "json"; }
bool want_json(const CommonConfig& c) { return c.format != "csv"; }

json common_config_json(const CommonConfig& c, const char* command) {
    json j;
    j["command"] = command;
    j["out"] = c.out_dir;
    j["format"] = c.format;
    j["seed"] = c.seed;
    j["plotdata"] = c.plotdata;
    return j;
}

void write_json_report(const fs::path& dir, const char* command, json& report) {
    report["version"] = kVersion;
    write_text(dir / (std::string(command) + ".json"), report.dump(2) + "\n");
}

json mat_json(const Mat2C& m) {
    auto pair = [](cxd z) { return json::array({z.real(), z.imag()}); };
    return json::array({json::array({pair(m.a00), pair(m.a01)}),
                        json::array({pair(m.a10), pair(m.a11)})});
}

// One branch-continuation step of at most pi/16 quasienergy motion per
// sub-step, shared by the sweep commands.
struct Walker {
    std::array<double, 2> energies;
    std::array<Vec2C, 2> vectors;
    double lambda = 0.0;

    explicit Walker(double start) : lambda(start) {
        QuasiPair anchor = quasi_eigensystem(build_floquet(kModel, start));
        energies = anchor.phases;
        vectors = anchor.vectors;
    }

    // Advance to `target`, refining internally; returns the largest
    // per-sub-step overlap defect 1 - |<prev|next>| seen on the way.
    double advance(double target) {
        double span = target - lambda;
        if (span == 0.0) return 0.0;
        int sub = std::max(1, static_cast<int>(std::ceil(std::abs(span) / (kPi / 16.0))));
        double defect = 0.0;
        for (int k = 1; k <= sub; ++k) {
            double next = lambda + span * k / sub;
            BranchStep step = continue_step(kModel, next, energies, vectors);
            for (int s = 0; s < 2; ++s)
                defect = std::max(defect, 1.0 - std::abs(vectors[s].dot(step.vectors[s])));
            energies = step.energies;
            vectors = step.vectors;
        }
        lambda = target;
        return defect;
    }
};

GaugeTag parse_gauge(const std::string& name) {
    if (name == "real") return GaugeTag::real_gauge;
    if (name == "parallel") return GaugeTag::parallel_transport;
    if (name == "kick") return GaugeTag::kick_component_real;
    throw std::invalid_argument("unknown gauge '" + name +
                                "' (expected real, parallel or kick)");
}

} // namespace

void cmd_spectrum(const CommonConfig& common, const SpectrumParams& params) {
    if (params.steps < 1)
        throw std::invalid_argument("spectrum: steps must be >= 1");
    fs::path dir = prepare_out_dir(common);

    struct Row {
        double lambda, e0, e1;
    };
    std::vector<Row> rows;
    Walker walk(params.lambda_start);
    rows.push_back({walk.lambda, walk.energies[0], walk.energies[1]});
    if (params.lambda_start != params.lambda_end) {
        for (int k = 1; k <= params.steps; ++k) {
            double lam = params.lambda_start +
                         (params.lambda_end - params.lambda_start) * k / params.steps;
            walk.advance(lam);
            rows.push_back({lam, walk.energies[0], walk.energies[1]});
        }
    }

    if (want_csv(common)) {
        std::string csv = "lambda,E0_unwrapped,E1_unwrapped,E0_mod,E1_mod\n";
        for (const Row& r : rows)
            csv += num(r.lambda) + "," + num(r.e0) + "," + num(r.e1) + "," +
                   num(wrap_angle(r.e0)) + "," + num(wrap_angle(r.e1)) + "\n";
        write_text(dir / "spectrum.csv", csv);
    }
    if (want_json(common)) {
        json j;
        j["config"] = common_config_json(common, "spectrum");
        j["config"]["lambda_start"] = params.lambda_start;
        j["config"]["lambda_end"] = params.lambda_end;
        j["config"]["steps"] = params.steps;
        j["columns"] = {"lambda", "E0_unwrapped", "E1_unwrapped", "E0_mod", "E1_mod"};
        json table = json::array();
        for (const Row& r : rows)
            table.push_back({r.lambda, r.e0, r.e1, wrap_angle(r.e0), wrap_angle(r.e1)});
        j["rows"] = table;
        write_json_report(dir, "spectrum", j);
    }
    if (common.plotdata) {
        std::string dat;
        for (const Row& r : rows)
            dat += num(r.lambda) + " " + num(r.e0) + "\n";
        write_text(dir / "spectrum_branch0.dat", dat);
        dat.clear();
        for (const Row& r : rows)
            dat += num(r.lambda) + " " + num(r.e1) + "\n";
        write_text(dir / "spectrum_branch1.dat", dat);
    }
}

void cmd_cycle(const CommonConfig& common, const CycleParams& params) {
    if (params.cycles < 1)
        throw std::invalid_argument("cycle: cycles must be >= 1");
    if (params.steps < 64 * params.cycles)
        throw std::invalid_argument("cycle: need at least 64 steps per cycle (" +
                                    std::to_string(64 * params.cycles) + " here)");
    fs::path dir = prepare_out_dir(common);

    const double total = kTwoPi * params.cycles;
    Walker walk(0.0);
    std::array<Vec2C, 2> anchor = walk.vectors;

    struct Row {
        double lambda, e0, e1, defect;
    };
    std::vector<Row> rows{{0.0, walk.energies[0], walk.energies[1], 0.0}};
    double max_defect = 0.0;
    for (int k = 1; k <= params.steps; ++k) {
        double lam = total * k / params.steps;
        double defect = walk.advance(lam);
        max_defect = std::max(max_defect, defect);
        rows.push_back({lam, walk.energies[0], walk.energies[1], defect});
    }
    CyclePermutation perm = match_frames(anchor, walk.vectors, total);

    if (want_csv(common)) {
        std::string csv = "lambda,E0_unwrapped,E1_unwrapped,step_overlap_defect\n";
        for (const Row& r : rows)
            csv += num(r.lambda) + "," + num(r.e0) + "," + num(r.e1) + "," +
                   num(r.defect) + "\n";
        write_text(dir / "cycle.csv", csv);
    }
    if (want_json(common)) {
        json j;
        j["config"] = common_config_json(common, "cycle");
        j["config"]["steps"] = params.steps;
        j["config"]["cycles"] = params.cycles;
        j["permutation"] = {perm.mapping[0], perm.mapping[1]};
        j["branch_signs"] = {perm.branch_signs[0], perm.branch_signs[1]};
        j["max_step_overlap_defect"] = max_defect;
        j["final_energies"] = {walk.energies[0], walk.energies[1]};
        write_json_report(dir, "cycle", j);
    }
    if (common.plotdata) {
        std::string dat;
        for (const Row& r : rows)
            dat += num(r.lambda) + " " + num(r.e0) + "\n";
        write_text(dir / "cycle_branch0.dat", dat);
    }
}

void cmd_connection(const CommonConfig& common, const ConnectionParams& params) {
    if (!params.single && params.r_steps < 1)
        throw std::invalid_argument("connection: r-steps must be >= 1");
    fs::path dir = prepare_out_dir(common);

    std::vector<double> rs;
    if (params.single) {
        rs.push_back(params.r);
    } else {
        for (int k = 0; k <= params.r_steps; ++k)
            rs.push_back(params.r_start +
                         (params.r_end - params.r_start) * k / params.r_steps);
    }
    std::vector<GaugeTag> gauges;
    for (const auto& name : params.gauges) gauges.push_back(parse_gauge(name));

    struct Row {
        double r;
        std::string gauge, method;
        Mat2C a;
        double residual;
    };
    std::vector<Row> rows;
    json skipped = json::array();
    for (double r : rs) {
        ConnectionSample an = connection_analytic(kModel, r);
        rows.push_back({r, gauge_name(an.gauge_tag), "analytic", an.a, 0.0});
        for (GaugeTag g : gauges) {
            try {
                ConnectionSample s = connection_fd(kModel, r, params.h, g);
                rows.push_back({r, gauge_name(g), "fd", s.a, s.fd_residual});
            } catch (const DegenerateBranch& e) {
                skipped.push_back({{"r", r}, {"gauge", gauge_name(g)}, {"reason", e.what()}});
            } catch (const GaugeSingular& e) {
                skipped.push_back({{"r", r}, {"gauge", gauge_name(g)}, {"reason", e.what()}});
            } catch (const ContinuationFailure& e) {
                skipped.push_back({{"r", r}, {"gauge", gauge_name(g)}, {"reason", e.what()}});
            }
        }
    }

    bool have_wilson = false;
    WilsonLoop loop;
    if (params.wilson) {
        double w_start = params.single ? 0.0 : params.r_start;
        double w_end = params.single ? 2.0 * kTwoPi : params.r_end;
        loop = wilson_loop(kModel, w_start, w_end, params.wilson_steps);
        have_wilson = true;
    }

    if (want_csv(common)) {
        std::string csv =
            "r,gauge,method,re_a00,im_a00,re_a01,im_a01,re_a10,im_a10,re_a11,"
            "im_a11,fd_residual\n";
        for (const Row& row : rows) {
            csv += num(row.r) + "," + row.gauge + "," + row.method;
            for (cxd z : {row.a.a00, row.a.a01, row.a.a10, row.a.a11})
                csv += "," + num(z.real()) + "," + num(z.imag());
            csv += "," + num(row.residual) + "\n";
        }
        write_text(dir / "connection.csv", csv);
    }
    if (want_json(common)) {
        json j;
        j["config"] = common_config_json(common, "connection");
        if (params.single) {
            j["config"]["r"] = params.r;
        } else {
            j["config"]["r_start"] = params.r_start;
            j["config"]["r_end"] = params.r_end;
            j["config"]["r_steps"] = params.r_steps;
        }
        j["config"]["h"] = params.h;
        j["config"]["gauges"] = params.gauges;
        j["config"]["wilson"] = params.wilson;
        j["config"]["wilson_steps"] = params.wilson_steps;
        json samples = json::array();
        for (const Row& row : rows)
            samples.push_back({{"r", row.r},
                               {"gauge", row.gauge},
                               {"method", row.method},
                               {"a", mat_json(row.a)},
                               {"fd_residual", row.residual}});
        j["samples"] = samples;
        j["skipped"] = skipped;
        if (have_wilson) {
            j["wilson"] = {{"r_start", loop.r_start},
                           {"r_end", loop.r_end},
                           {"steps", loop.steps},
                           {"w", mat_json(loop.w)},
                           {"distance_to_minus_identity",
                            (loop.w + Mat2C::identity()).max_abs()}};
        }
        write_json_report(dir, "connection", j);
    }
    if (common.plotdata) {
        std::string dat;
        for (const Row& row : rows)
            if (row.method == "fd" && row.gauge == "parallel")
                dat += num(row.r) + " " + num(row.a.a01.imag()) + "\n";
        write_text(dir / "connection_a01.dat", dat);
    }
}

void cmd_protocol(const CommonConfig& common, const ProtocolParams& params) {
    if (params.initial.size() != 4)
        throw std::invalid_argument(
            "protocol: initial amplitudes need four numbers (re0 im0 re1 im1)");
    fs::path dir = prepare_out_dir(common);

    KickProtocol protocol =
        KickProtocol::uniform(params.num_kicks, params.period, params.cycles);
    std::array<cxd, 2> initial{cxd{params.initial[0], params.initial[1]},
                               cxd{params.initial[2], params.initial[3]}};

    double phase_diff = dynamical_phase_difference(protocol, kModel);
    Mat2C map = predicted_cycle_map(kModel, protocol);
    CycleResult sim = simulate_cycle(kModel, protocol, initial);

    json j;
    j["config"] = common_config_json(common, "protocol");
    j["config"]["num_kicks"] = params.num_kicks;
    j["config"]["period"] = params.period;
    j["config"]["cycles"] = params.cycles;
    j["config"]["initial"] = params.initial;
    j["config"]["choose_min"] = params.choose_min;
    j["config"]["fidelity_table"] = params.fidelity_table;
    j["phase_difference"] = phase_diff;
    j["predicted_map"] = mat_json(map);
    j["simulation"] = {
        {"fidelity_vs_adiabatic", sim.fidelity_vs_adiabatic},
        {"relative_phase", sim.relative_phase},
        {"norm_defect", sim.norm_defect},
        {"final_amplitudes",
         {{sim.final_amplitudes[0].real(), sim.final_amplitudes[0].imag()},
          {sim.final_amplitudes[1].real(), sim.final_amplitudes[1].imag()}}}};
    if (params.choose_min > 0)
        j["chosen_num_kicks"] =
            choose_num_kicks(kModel, params.period, params.choose_min);

    std::string csv = "M,fidelity_vs_adiabatic,relative_phase,norm_defect\n";
    if (params.fidelity_table) {
        json table = json::array();
        for (int m : {64, 128, 256, 512}) {
            CycleResult res = simulate_cycle(
                kModel, KickProtocol::uniform(m, params.period), initial);
            table.push_back({{"num_kicks", m},
                             {"fidelity_vs_adiabatic", res.fidelity_vs_adiabatic},
                             {"relative_phase", res.relative_phase},
                             {"norm_defect", res.norm_defect}});
            csv += std::to_string(m) + "," + num(res.fidelity_vs_adiabatic) + "," +
                   num(res.relative_phase) + "," + num(res.norm_defect) + "\n";
        }
        j["fidelity_table"] = table;
    }

    if (want_json(common)) write_json_report(dir, "protocol", j);
    if (want_csv(common) && params.fidelity_table)
        write_text(dir / "protocol.csv", csv);
}

void cmd_mobile(const CommonConfig& common, const MobileParams& params) {
    if (params.mode != "spectral" && params.mode != "conjugated" &&
        params.mode != "both")
        throw std::invalid_argument(
            "mobile: mode must be spectral, conjugated or both");
    fs::path dir = prepare_out_dir(common);

    GridSpec grid;
    grid.n_points = params.n_points;
    grid.period = 2.0 * kTwoPi;
    grid.mass = params.mass;
    validate_grid(grid);

    MomentumWindows windows;
    windows.offset_plus = params.offset_plus;
    windows.offset_minus = params.offset_minus;
    windows.allow_misaligned = params.allow_misaligned;

    auto lab = unitary_eigensystem(build_lab_floquet(grid));

    json j;
    j["config"] = common_config_json(common, "mobile");
    j["config"]["n_points"] = params.n_points;
    j["config"]["mass"] = params.mass;
    j["config"]["mode"] = params.mode;
    j["config"]["offset_plus"] = params.offset_plus;
    j["config"]["offset_minus"] = params.offset_minus;
    j["config"]["allow_misaligned"] = params.allow_misaligned;
    j["config"]["single_exp"] = params.single_exp;

    bool do_spectral = params.mode != "conjugated";
    bool do_conjugated = params.mode != "spectral";
    std::vector<double> spectral_phases, conjugated_phases;
    if (do_spectral) {
        auto eig = unitary_eigensystem(
            build_moving_frame_floquet(grid, FrameMode::spectral, windows));
        spectral_phases = eig.values;
        j["spectral"] = {
            {"matching_distance", match_phase_sets(lab.values, spectral_phases)}};
    }
    if (do_conjugated) {
        auto eig = unitary_eigensystem(
            build_moving_frame_floquet(grid, FrameMode::conjugated));
        conjugated_phases = eig.values;
        j["conjugated"] = {
            {"matching_distance", match_phase_sets(lab.values, conjugated_phases)}};
    }
    if (params.single_exp) {
        auto eig = unitary_eigensystem(build_moving_frame_single_exp(grid));
        json report = {{"matching_distance_vs_lab",
                        match_phase_sets(lab.values, eig.values)}};
        if (do_spectral)
            report["matching_distance_vs_product"] =
                match_phase_sets(spectral_phases, eig.values);
        j["single_exp"] = report;
    }

    if (want_csv(common)) {
        std::string csv = "index,lab_phase";
        if (do_spectral) csv += ",spectral_phase";
        if (do_conjugated) csv += ",conjugated_phase";
        csv += "\n";
        for (std::size_t i = 0; i < lab.values.size(); ++i) {
            csv += std::to_string(i) + "," + num(lab.values[i]);
            if (do_spectral) csv += "," + num(spectral_phases[i]);
            if (do_conjugated) csv += "," + num(conjugated_phases[i]);
            csv += "\n";
        }
        write_text(dir / "mobile.csv", csv);
    }
    if (want_json(common)) write_json_report(dir, "mobile", j);
    if (common.plotdata) {
        std::string dat;
        for (std::size_t i = 0; i < lab.values.size(); ++i)
            dat += std::to_string(i) + " " + num(lab.values[i]) + "\n";
        write_text(dir / "mobile_lab.dat", dat);
    }
}

} // namespace spinlab::cli
