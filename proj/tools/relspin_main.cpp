// Command-line drivers: the operator property table, hydrogenic spin and
// position-variance scans, the laser spin-precession scaling sweep, and the
// classical spin-ensemble model.  All results land in CSV/JSON files.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <omp.h>

#include "relspin/classical_spins.hpp"
#include "relspin/grid.hpp"
#include "relspin/io.hpp"
#include "relspin/precession.hpp"
#include "relspin/property_check.hpp"

using namespace relspin;
namespace cst = relspin::constants;

namespace {

struct GlobalArgs {
    std::string out = "out.csv";
    std::uint64_t seed = 0x5350494eull;
    int workers = 0;
    std::string config_path;
    bool fast = false;
};

io::Config load_config(const GlobalArgs& g) {
    if (g.config_path.empty()) return {};
    return io::Config::parse_file(g.config_path);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : csv) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// ---- table1 -----------------------------------------------------------------

int cmd_table1(const GlobalArgs& g, int samples) {
    const io::Config cfg = load_config(g);
    const int n_samples = cfg.get_int("samples", samples);

    std::vector<spin_ops::PropertyReport> reports;
    for (const auto kind : spin_ops::all_kinds)
        reports.push_back(spin_ops::check_properties(kind, n_samples, g.seed));

    std::ofstream out(g.out);
    if (!out) {
        std::cerr << "cannot open " << g.out << "\n";
        return 1;
    }
    out << io::property_report_json(reports) << "\n";

    bool all_match = true;
    for (const auto& r : reports) {
        const auto expected = spin_ops::table_reference(r.kind);
        if (r.booleans() != expected) {
            all_match = false;
            std::cerr << "MISMATCH " << spin_ops::kind_name(r.kind) << ": got {";
            for (bool b : r.booleans()) std::cerr << (b ? "yes " : "no ");
            std::cerr << "} expected {";
            for (bool b : expected) std::cerr << (b ? "yes " : "no ");
            std::cerr << "}\n";
        }
    }
    std::cout << (all_match ? "table1: all 35 cells match\n"
                            : "table1: MISMATCH against the reference table\n");
    return all_match ? 0 : 2;
}

// ---- fig1 -------------------------------------------------------------------

int cmd_fig1(const GlobalArgs& g, std::string z_csv, int points_flag) {
    const io::Config cfg = load_config(g);
    if (cfg.has("z_list")) z_csv = cfg.get_string("z_list", z_csv);
    int points = cfg.get_int("grid_points", points_flag);
    if (g.fast && points_flag == 128 && !cfg.has("grid_points")) points = 96;
    const double box_over_z = cfg.get_double("box_over_z", 40.0);

    std::vector<int> zs;
    for (const auto& tok : split_list(z_csv)) zs.push_back(std::stoi(tok));
    for (int z : zs)
        if (z < 1 || z * cst::alpha_fs >= 1.0) {
            std::cerr << "invalid Z " << z << " (need 1 <= Z and Z alpha < 1)\n";
            return 1;
        }

    const std::map<std::string, std::string> header = {
        {"command", "fig1"},
        {"grid_points", std::to_string(points)},
        {"box_over_z", io::format_double(box_over_z)},
        {"seed", std::to_string(g.seed)},
    };
    io::CsvWriter csv(g.out, {"z", "operator", "spin_z_up", "spin_z_down", "var_z",
                              "norm_defect"},
                      header);

    const auto position_kinds = {spin_ops::SpinOperatorKind::Pauli,
                                 spin_ops::SpinOperatorKind::FoldyWouthuysen,
                                 spin_ops::SpinOperatorKind::Pryce};

    for (int z : zs) {
        const grid::GridSpec spec = grid::GridSpec::cubic(points, box_over_z / z);
        grid::SampleInfo info_up;
        const grid::SpinorField up =
            grid::sample_state(hydrogenic::ground_state(z, +1), spec, &info_up);
        const grid::SpinorField down =
            grid::sample_state(hydrogenic::ground_state(z, -1), spec, nullptr);

        for (const auto kind : spin_ops::all_kinds) {
            const double s_up = grid::spin_expectation(up, kind, 2);
            const double s_down = grid::spin_expectation(down, kind, 2);
            double var = std::numeric_limits<double>::quiet_NaN();
            for (const auto pk : position_kinds)
                if (pk == kind) var = grid::variance_of_position(up, kind, 2).variance;
            csv.row_mixed({std::to_string(z), spin_ops::kind_name(kind),
                           io::format_double(s_up), io::format_double(s_down),
                           std::isnan(var) ? "" : io::format_double(var),
                           io::format_double(info_up.norm_defect)});
        }
        std::cout << "fig1: Z = " << z << " done\n";
    }
    return 0;
}

// ---- fig2 -------------------------------------------------------------------

dynamics::Backend parse_backend(const std::string& name) {
    using dynamics::Backend;
    if (name == "dirac") return Backend::Dirac1D;
    if (name == "relativistic_pauli") return Backend::RelativisticPauli;
    if (name == "nonrelativistic_pauli") return Backend::NonrelativisticPauli;
    if (name == "weak_fw") return Backend::WeakFW;
    throw CLI::ValidationError("unknown backend: " + name);
}

int cmd_fig2(const GlobalArgs& g, std::string backends_csv, double e_min, double e_max,
             int n_points, double lambda_nm, const std::string& series_dir) {
    const io::Config cfg = load_config(g);

    dynamics::SweepOptions opts;
    opts.lambda = io::length_nm_to_au(cfg.get_double("lambda_nm", lambda_nm));
    opts.e_min = cfg.get_double("e_min", e_min);
    opts.e_max = cfg.get_double("e_max", e_max);
    opts.points = cfg.get_int("points", n_points);
    opts.pulses = cfg.get_int("pulses", g.fast ? 10 : 12);
    opts.ramp_cycles = cfg.get_int("ramp_cycles", 64);
    opts.min_flat_cycles = cfg.get_int("flat_min", 32);
    opts.max_flat_cycles = cfg.get_int("flat_max", g.fast ? 16000 : 25000);
    opts.theta_total_target = cfg.get_double("theta_target", g.fast ? 8e-4 : 1.5e-3);
    opts.grid_points = cfg.get_int("grid_points", 32);

    if (opts.e_min <= 0.0 || opts.e_max <= opts.e_min || opts.points < 2) {
        std::cerr << "invalid sweep range\n";
        return 1;
    }

    std::vector<dynamics::Backend> backends;
    for (const auto& name : split_list(cfg.get_string("backends", backends_csv)))
        backends.push_back(parse_backend(name));

    const auto amps = dynamics::sweep_amplitudes(opts);

    struct Job {
        dynamics::Backend backend;
        double amplitude;
    };
    std::vector<Job> jobs;
    for (const auto b : backends)
        for (const double a : amps) jobs.push_back({b, a});

    std::vector<dynamics::SweepRow> rows(jobs.size());
    std::vector<dynamics::TrainResult> trains(jobs.size());
    // heaviest (low-amplitude) points first so the worker pool stays busy
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, g.workers ? g.workers : omp_get_max_threads()))
    for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(jobs.size()); ++j) {
        rows[j] = dynamics::run_sweep_point(jobs[j].backend, jobs[j].amplitude, opts,
                                            &trains[j]);
    }

    const std::map<std::string, std::string> header = {
        {"command", "fig2"},
        {"lambda_au", io::format_double(opts.lambda)},
        {"pulses", std::to_string(opts.pulses)},
        {"ramp_cycles", std::to_string(opts.ramp_cycles)},
        {"theta_target", io::format_double(opts.theta_total_target)},
        {"flat_max", std::to_string(opts.max_flat_cycles)},
        {"grid_points", std::to_string(opts.grid_points)},
        {"seed", std::to_string(g.seed)},
    };
    io::CsvWriter csv(g.out,
                      {"backend", "amplitude_au", "intensity_au", "omega_au", "residual",
                       "predicted_au", "t_eff_total", "pulses", "flat_cycles", "degenerate"},
                      header);
    for (const auto& r : rows)
        csv.row_mixed({dynamics::backend_name(r.backend), io::format_double(r.amplitude),
                       io::format_double(r.intensity), io::format_double(r.omega),
                       io::format_double(r.residual), io::format_double(r.predicted),
                       io::format_double(r.t_eff_total), std::to_string(r.pulses),
                       std::to_string(r.flat_cycles), r.degenerate ? "1" : "0"});

    // per-backend slope summary
    bool ok = true;
    for (const auto b : backends) {
        std::vector<dynamics::SweepRow> sub;
        for (const auto& r : rows)
            if (r.backend == b) sub.push_back(r);
        const double slope = dynamics::fit_loglog_slope(sub);
        const double expected = (b == dynamics::Backend::NonrelativisticPauli) ? 2.0 : 4.0;
        const bool pass = std::abs(slope - expected) <= 0.2;
        ok = ok && pass;
        std::cout << "fig2: " << dynamics::backend_name(b) << " slope = " << slope
                  << " (expected " << expected << " +- 0.2) " << (pass ? "ok" : "OFF")
                  << "\n";
    }

    // manifest echoing the full configuration
    {
        laser::LaserConfig lc;
        lc.amplitude = opts.e_max;
        lc.wavelength = opts.lambda;
        lc.ellipticity = 0.5 * cst::pi;
        std::ofstream mf(g.out + ".manifest.json");
        mf << io::run_manifest_json(lc, cfg.get_string("backends", backends_csv),
                                    opts.grid_points, 0.0, g.seed, {})
           << "\n";
    }
    if (!series_dir.empty()) {
        std::filesystem::create_directories(series_dir);
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            const std::string path = series_dir + "/" +
                                     dynamics::backend_name(jobs[j].backend) + "_" +
                                     std::to_string(j % amps.size()) + ".csv";
            io::CsvWriter run_csv(path, {"t", "s_x", "s_y", "s_z", "norm"},
                                  {{"backend", dynamics::backend_name(jobs[j].backend)},
                                   {"amplitude_au", io::format_double(jobs[j].amplitude)}});
            for (const auto& cp : trains[j].checkpoints)
                run_csv.row({cp.t, cp.spin.x(), cp.spin.y(), cp.spin.z(), cp.norm});
        }
    }
    return ok ? 0 : 1;
}

// ---- classical ----------------------------------------------------------------

int cmd_classical(const GlobalArgs& g, double larmor_ratio, int particles, int cycles) {
    const io::Config cfg = load_config(g);
    const double ratio = cfg.get_double("larmor_over_omega", larmor_ratio);
    const int n_particles = cfg.get_int("particles", particles);
    const int n_cycles = cfg.get_int("cycles", g.fast ? std::min(cycles, 60) : cycles);
    const int steps_per_cycle = cfg.get_int("steps_per_cycle", 256);

    laser::LaserConfig lc;
    lc.wavelength = cfg.get_double("lambda_au", 3.004662643);
    lc.ellipticity = 0.5 * cst::pi;
    lc.total_time = 0.0; // unwindowed
    lc.amplitude = ratio * lc.angular_frequency() * cst::c_au;

    if (ratio > 0.1)
        std::cerr << "warning: regime violation, Omega_L/omega = " << ratio << " > 0.1\n";

    const double cycle = lc.optical_cycle();
    const double omega_p = laser::omega_p(lc);

    const std::map<std::string, std::string> header = {
        {"command", "classical"},
        {"larmor_over_omega", io::format_double(ratio)},
        {"particles", std::to_string(n_particles)},
        {"cycles", std::to_string(n_cycles)},
        {"omega_p", io::format_double(omega_p)},
    };

    io::CsvWriter traj_csv(g.out, {"model", "particle", "x", "t", "s_x", "s_y", "s_z"},
                           header);
    const std::string summary_path =
        g.out.size() > 4 && g.out.substr(g.out.size() - 4) == ".csv"
            ? g.out.substr(0, g.out.size() - 4) + "_summary.csv"
            : g.out + "_summary";
    io::CsvWriter summary(summary_path,
                          {"model", "mean_rate", "omega_p", "rate_over_omega_p",
                           "regime_violation"},
                          header);

    bool ok = true;
    for (const auto model :
         {classical::TorqueModel::MagneticOnly, classical::TorqueModel::SpinDensityOnly,
          classical::TorqueModel::Both}) {
        auto spins = classical::uniform_ensemble(lc, n_particles);
        const auto res = classical::integrate_ensemble(
            spins, lc, model, n_cycles * cycle, cycle / steps_per_cycle, steps_per_cycle);
        for (std::size_t p = 0; p < res.trajectories.size(); ++p) {
            const auto& tr = res.trajectories[p];
            for (std::size_t k = 0; k < tr.samples.size(); ++k)
                traj_csv.row_mixed({classical::model_name(model), std::to_string(p),
                                    io::format_double(tr.x),
                                    io::format_double(res.times[k]),
                                    io::format_double(tr.samples[k].x()),
                                    io::format_double(tr.samples[k].y()),
                                    io::format_double(tr.samples[k].z())});
        }
        const double mean = classical::wavelength_averaged_rotation(res);
        summary.row_mixed({classical::model_name(model), io::format_double(mean),
                           io::format_double(omega_p), io::format_double(mean / omega_p),
                           res.regime_violation ? "1" : "0"});
        const double r = mean / omega_p;
        switch (model) {
            case classical::TorqueModel::MagneticOnly: ok = ok && std::abs(r - 1.0) < 0.05; break;
            case classical::TorqueModel::SpinDensityOnly: ok = ok && std::abs(r + 1.0) < 0.05; break;
            case classical::TorqueModel::Both: ok = ok && std::abs(r) < 0.02; break;
        }
        std::cout << "classical: " << classical::model_name(model)
                  << " mean rate / Omega_P = " << r << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relspin: relativistic spin operators, hydrogenic expectation values, "
                 "and electron-spin precession in standing light waves"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--out", g.out, "output file path");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--workers", g.workers, "worker threads (0 = all cores)");
    app.add_option("--config", g.config_path, "flat key=value config file");
    app.add_flag("--fast", g.fast, "reduced-cost mode (coarser grids / shorter runs)");

    auto* t1 = app.add_subcommand("table1", "operator property table (JSON report)");
    t1->fallthrough();
    int samples = 128;
    t1->add_option("--samples", samples, "momenta sampled per operator");

    auto* f1 = app.add_subcommand("fig1", "hydrogenic spin and position variance vs Z");
    f1->fallthrough();
    std::string z_csv = "1,10,20,30,40,50,60,70,80,90,92";
    int f1_points = 128;
    f1->add_option("--z", z_csv, "comma-separated atomic numbers");
    f1->add_option("--points", f1_points, "grid points per axis (power of two)");

    auto* f2 = app.add_subcommand("fig2", "spin-precession frequency vs field amplitude");
    f2->fallthrough();
    std::string backends = "dirac,relativistic_pauli,nonrelativistic_pauli";
    double e_min = 16.6, e_max = 525.0, lambda_nm = 0.159;
    int n_points = 9;
    std::string series_dir;
    f2->add_option("--backends", backends, "comma-separated backend list");
    f2->add_option("--e-min", e_min, "lowest field amplitude (a.u.)");
    f2->add_option("--e-max", e_max, "highest field amplitude (a.u.)");
    f2->add_option("--points", n_points, "number of sweep points");
    f2->add_option("--lambda-nm", lambda_nm, "wavelength in nm");
    f2->add_option("--series-dir", series_dir, "directory for per-run spin series");

    auto* cl = app.add_subcommand("classical", "classical spin ensemble in the standing wave");
    cl->fallthrough();
    double larmor_ratio = 0.02;
    int particles = 128, cycles = 150;
    cl->add_option("--larmor-ratio", larmor_ratio, "Omega_L / omega");
    cl->add_option("--particles", particles, "ensemble size");
    cl->add_option("--cycles", cycles, "integration time in optical cycles");

    CLI11_PARSE(app, argc, argv);

    grid::set_worker_count(g.workers);

    try {
        if (t1->parsed()) return cmd_table1(g, samples);
        if (f1->parsed()) return cmd_fig1(g, z_csv, f1_points);
        if (f2->parsed()) return cmd_fig2(g, backends, e_min, e_max, n_points, lambda_nm,
                                          series_dir);
        if (cl->parsed()) return cmd_classical(g, larmor_ratio, particles, cycles);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
