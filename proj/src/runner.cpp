#include "bohm/runner.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>

#include "bohm/builders.hpp"
#include "bohm/measurement.hpp"
#include "bohm/propagator.hpp"
#include "bohm/scenario.hpp"
#include "bohm/subsystem.hpp"
#include "bohm/svg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bohm {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct GateSet {
    json gates = json::object();
    std::vector<std::string> failures;

    void check(const std::string& name, double value, double threshold,
               bool below = true) {
        const bool pass = below ? value < threshold : value > threshold;
        gates[name] = {{"value", value},
                       {"threshold", threshold},
                       {"comparison", below ? "<" : ">"},
                       {"pass", pass}};
        if (!pass)
            failures.push_back(name + ": " + num(value) + (below ? " >= " : " <= ") +
                               num(threshold));
    }
};

double tol(const RunConfig& cfg, const std::string& key, double fallback) {
    const auto it = cfg.tolerance_overrides.find(key);
    return it == cfg.tolerance_overrides.end() ? fallback : it->second;
}

void write_trajectories_csv(const fs::path& path, const TrajectoryEnsemble& e,
                            int dims) {
    std::string csv = "t,trajectory_id";
    for (int a = 0; a < dims; ++a) csv += ",q" + std::to_string(a);
    for (int a = 0; a < dims; ++a) csv += ",u" + std::to_string(a);
    csv += "\n";
    for (std::size_t i = 0; i < e.trajectories.size(); ++i) {
        const auto& tr = e.trajectories[i];
        for (std::size_t k = 0; k < tr.times.size(); ++k) {
            csv += num(tr.times[k]) + "," + std::to_string(i);
            for (int a = 0; a < dims; ++a) csv += "," + num(tr.positions[k][a]);
            for (int a = 0; a < dims; ++a) csv += "," + num(tr.unwrapped[k][a]);
            csv += "\n";
        }
    }
    write_file(path, csv);
}

void write_density_csv(const fs::path& dir, const std::vector<WaveField>& snapshots) {
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const DensityField d = density(snapshots[k]);
        const GridSpec& g = d.grid;
        std::string csv = "t=" + num(snapshots[k].time_tag) + "\n";
        for (int a = 0; a < g.dims(); ++a) csv += (a ? ",q" : "q") + std::to_string(a);
        csv += ",density\n";
        for (std::size_t i = 0; i < d.values.size(); ++i) {
            const auto idx = g.unflatten(i);
            for (int a = 0; a < g.dims(); ++a)
                csv += (a ? "," : "") + num(g.coord(a, idx[a]));
            csv += "," + num(d.values[i]) + "\n";
        }
        write_file(dir / ("density_t" + std::to_string(k) + ".csv"), csv);
    }
}

std::size_t total_clamps(const TrajectoryEnsemble& e) {
    std::size_t c = 0;
    for (const auto& t : e.trajectories) c += t.clamp_events;
    return c;
}

///// Fringe contrast along a density row: ratio of the smaller of the two
/// tallest adjacent local maxima to the valley between them.
double fringe_contrast(const std::vector<double>& row) {
    double peak = 0.0;
    for (double v : row) peak = std::max(peak, v);
    std::vector<std::size_t> maxima;
    for (std::size_t j = 1; j + 1 < row.size(); ++j)
        if (row[j] > row[j - 1] && row[j] >= row[j + 1] && row[j] >= 0.2 * peak)
            maxima.push_back(j);
    if (maxima.size() < 2) return 1.0;
    double best = 1.0;
    for (std::size_t m = 0; m + 1 < maxima.size(); ++m) {
        const double p = std::min(row[maxima[m]], row[maxima[m + 1]]);
        double valley = p;
        for (std::size_t j = maxima[m]; j <= maxima[m + 1]; ++j)
            valley = std::min(valley, row[j]);
        if (valley <= 0) return std::numeric_limits<double>::infinity();
        best = std::max(best, p / valley);
    }
    return best;
}

DynamicScenario scenario_with_overrides(DynamicScenario s, const RunConfig& cfg) {
    if (cfg.dt) s.dt = *cfg.dt;
    if (cfg.t_final) s.t_final = *cfg.t_final;
    if (cfg.dt_traj) s.dt_traj = *cfg.dt_traj;
    if (cfg.snapshot_times) s.snapshot_times = *cfg.snapshot_times;
    return s;
}

// ---------------------------------------------------------------- scenarios

void run_two_slit(const RunConfig& cfg, const fs::path& out, json& report,
                  GateSet& gates) {
    const DynamicScenario s = scenario_with_overrides(make_two_slit_scenario(), cfg);

    // equilibrium ensemble: equivariance statistics
    const EnsembleRunResult eq = run_ensemble(s, cfg.n, cfg.seed);
    const EquivarianceReport er = equivariance_report(eq.ensemble, eq.field_snapshots);
    json ks = json::array();
    double worst_ks = 0.0;
    for (const auto& snap : er.snapshots) {
        ks.push_back({{"t", snap.time}, {"ks_per_axis", snap.ks_per_axis}});
        for (double d : snap.ks_per_axis) worst_ks = std::max(worst_ks, d);
    }
    report["equivariance"] = {{"sample_count", er.sample_count},
                              {"threshold", er.threshold},
                              {"snapshots", ks}};
    gates.check("equivariance_ks", worst_ks, tol(cfg, "ks", er.threshold));
    gates.check("equilibrium_clamp_events",
                static_cast<double>(total_clamps(eq.ensemble)), 0.5);

    // uniform-in-slits fan: phenomenology
    DynamicScenario fan = s;
    fan.sampling = DynamicScenario::Sampling::UniformInSlits;
    fan.snapshot_times.clear();
    for (double t = 0.05; t <= fan.t_final + 1e-12; t += 0.05)
        fan.snapshot_times.push_back(t);
    const EnsembleRunResult fr = run_ensemble(fan, 200, cfg.seed + 1);

    std::size_t outside_slits = 0;
    std::size_t axis_crossings = 0;
    for (const auto& tr : fr.ensemble.trajectories) {
        const double y0 = tr.positions.front()[1];
        const bool upper = std::abs(y0 - s.slit_center) <= s.slit_halfwidth;
        const bool lower = std::abs(y0 + s.slit_center) <= s.slit_halfwidth;
        if (upper == lower) ++outside_slits;
        const double sign0 = y0 >= 0 ? 1.0 : -1.0;
        for (const auto& p : tr.unwrapped)
            if (p[1] * sign0 < 0.0) { ++axis_crossings; break; }
    }
    report["two_slit"] = {{"fan_size", fr.ensemble.trajectories.size()},
                          {"outside_slits", outside_slits},
                          {"axis_crossings", axis_crossings}};
    gates.check("slit_passage_violations", static_cast<double>(outside_slits), 0.5);
    gates.check("axis_crossings", static_cast<double>(axis_crossings), 0.5);

    // screen-line fringe contrast at the designated screen time
    const WaveField* screen_field = nullptr;
    for (const auto& f : eq.field_snapshots)
        if (std::abs(f.time_tag - s.screen_time) < 1e-9) screen_field = &f;
    if (screen_field == nullptr)
        throw ConfigError("snapshots", "screen time missing from snapshot list");
    const DensityField d = density(*screen_field);
    const GridSpec& g = d.grid;
    const int i_screen = static_cast<int>(
        std::lround((s.screen_coord - g.axis(0).lo) / g.step(0)));
    const int ny = g.axis(1).n;
    std::vector<double> row(static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j)
        row[static_cast<std::size_t>(j)] =
            d.values[static_cast<std::size_t>(i_screen) * ny + j];
    const double contrast = fringe_contrast(row);
    report["two_slit"]["fringe_contrast"] = contrast;
    gates.check("fringe_contrast", contrast, tol(cfg, "fringe_contrast", 5.0), false);

    write_trajectories_csv(out / "trajectories.csv", fr.ensemble, g.dims());
    write_density_csv(out, eq.field_snapshots);
    if (cfg.plot_trajectories) {
        std::vector<std::vector<std::pair<double, double>>> series;
        for (const auto& tr : fr.ensemble.trajectories) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t k = 0; k < tr.times.size(); ++k)
                pts.emplace_back(tr.unwrapped[k][0], tr.unwrapped[k][1]);
            series.push_back(std::move(pts));
        }
        write_file(out / "trajectory_fan.svg",
                   svg::line_plot(series, "two-slit trajectory fan (x vs y)"));
    }
    if (cfg.plot_density)
        write_file(out / "density_screen.svg",
                   svg::heat_map(d.values, g.axis(0).n, ny, g.axis(0).lo, g.axis(0).hi,
                                 g.axis(1).lo, g.axis(1).hi, "density at screen time"));
}

void run_stationary(const RunConfig& cfg, const fs::path& out, json& report,
                    GateSet& gates) {
    StationaryUniverseParams p;
    if (cfg.t_final) p.t_final = *cfg.t_final;
    if (cfg.dt) p.dt = *cfg.dt;
    if (cfg.dt_traj) p.dt_traj = *cfg.dt_traj;

    const GridSpec grid = stationary_universe_grid(p.grid_points);
    const WaveField psi = stationary_universe_field(grid);
    const double residual = eigen_residual(psi, zero_potential(grid), 2.0);
    gates.check("eigen_residual", residual, tol(cfg, "eigen_residual", 1e-8));

    const EmergenceReport rep = run_stationary_universe(p);
    gates.check("y_deviation", rep.max_y_deviation, tol(cfg, "y_deviation", 1e-6));
    gates.check("projective_distance", rep.max_projective_distance,
                tol(cfg, "projective_distance", 1e-6));
    gates.check("nodal_times", static_cast<double>(rep.nodal_times), 0.5);

    report["stationary_universe"] = {
        {"eigen_residual", residual},
        {"max_y_deviation", rep.max_y_deviation},
        {"max_projective_distance", rep.max_projective_distance},
        {"max_schrodinger_residual", rep.max_schrodinger_residual},
        {"times", rep.times},
        {"projective_distances", rep.projective_distances}};

    std::string csv = "t,y_unwrapped,projective_distance\n";
    for (std::size_t k = 0; k < rep.times.size(); ++k)
        csv += num(rep.times[k]) + "," + num(rep.y_positions[k]) + "," +
               num(rep.projective_distances[k]) + "\n";
    write_file(out / "trajectories.csv", csv);
    if (cfg.plot_trajectories) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < rep.times.size(); ++k)
            pts.emplace_back(rep.times[k], rep.y_positions[k]);
        write_file(out / "environment_trajectory.svg",
                   svg::line_plot({pts}, "environment coordinate Y(t)"));
    }
}

void run_branching(const RunConfig& cfg, const fs::path& out, json& report,
                   GateSet& gates) {
    BranchingUniverseParams p;
    if (cfg.t_final) p.t_final = *cfg.t_final;
    if (cfg.dt) p.dt = *cfg.dt;
    if (cfg.dt_traj) p.dt_traj = *cfg.dt_traj;

    const BranchingReport rep = run_branching_universe(p);
    gates.check("packet_overlap", rep.packet_overlap, 1e-8);
    gates.check("branch_tracking_widths", rep.max_center_offset_in_widths,
                tol(cfg, "branch_widths", 3.0));
    gates.check("projective_distance", rep.emergence.max_projective_distance,
                tol(cfg, "projective_distance", 1e-3));

    report["branching_universe"] = {
        {"branch_id", rep.emergence.branch_id},
        {"packet_overlap", rep.packet_overlap},
        {"max_center_offset_in_widths", rep.max_center_offset_in_widths},
        {"max_projective_distance", rep.emergence.max_projective_distance},
        {"times", rep.emergence.times},
        {"branch_centers", rep.branch_centers},
        {"branch_widths", rep.branch_widths}};

    std::string csv = "t,y_unwrapped,branch_center,branch_width,projective_distance\n";
    for (std::size_t k = 0; k < rep.emergence.times.size(); ++k)
        csv += num(rep.emergence.times[k]) + "," + num(rep.emergence.y_positions[k]) +
               "," + num(rep.branch_centers[k]) + "," + num(rep.branch_widths[k]) +
               "," + num(rep.emergence.projective_distances[k]) + "\n";
    write_file(out / "trajectories.csv", csv);
    if (cfg.plot_trajectories) {
        std::vector<std::pair<double, double>> ypts, cpts;
        for (std::size_t k = 0; k < rep.emergence.times.size(); ++k) {
            ypts.emplace_back(rep.emergence.times[k], rep.emergence.y_positions[k]);
            cpts.emplace_back(rep.emergence.times[k], rep.branch_centers[k]);
        }
        write_file(out / "branch_tracking.svg",
                   svg::line_plot({ypts, cpts}, "Y(t) and branch packet center"));
    }
}

void run_pointer(const RunConfig& cfg, const fs::path& out, json& report,
                 GateSet& gates) {
    ExperimentSpec spec = make_pointer_experiment();
    if (cfg.dt) spec.dt = *cfg.dt;

    const double alpha = 0.6;  // |alpha|^2 = 0.36 on the left packet
    const double beta = 0.8;
    // width 0.5 keeps the packets orthogonal to well below 1e-9
    auto left = init_field(spec.system_grid, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], -4.0, 0.5);
    });
    auto right = init_field(spec.system_grid, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 4.0, 0.5);
    });
    WaveField psi = left;
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
        psi.amplitudes[i] = alpha * left.amplitudes[i] + beta * right.amplitudes[i];
    psi = normalized(psi);

    std::vector<std::vector<double>> masks(2, std::vector<double>(spec.system_grid.size()));
    for (std::size_t i = 0; i < spec.system_grid.size(); ++i) {
        const double x = spec.system_grid.coord(0, static_cast<int>(i));
        masks[1][i] = x >= 0 ? 1.0 : 0.0;
        masks[0][i] = 1.0 - masks[1][i];
    }
    const SpectralComparison cmp = verify_spectral_measure(spec, masks, psi);
    gates.check("spectral_difference", cmp.max_abs_difference,
                tol(cfg, "spectral_difference", 2e-3));
    gates.check("bin_minus_vs_alpha2",
                std::abs(cmp.experiment.masses[0] - 0.36), 2e-3);

    const double bil = verify_bilinearity(spec, left, right, 1.0 / std::sqrt(2.0),
                                          Complex(0.0, 1.0 / std::sqrt(2.0)));
    gates.check("bilinearity_deviation", bil, tol(cfg, "bilinearity", 1e-8));

    report["pointer_measurement"] = {
        {"bins", cmp.experiment.bin_labels},
        {"pushforward_masses", cmp.experiment.masses},
        {"projector_masses", cmp.projector_masses},
        {"max_abs_difference", cmp.max_abs_difference},
        {"bilinearity_deviation", bil}};

    // trajectory-sampled cross-check when an ensemble size is configured
    if (cfg.n >= 100) {
        const ResultDistribution emp = sample_experiment(spec, psi, cfg.n, cfg.seed);
        double worst = 0.0;
        double sigma3 = 0.0;
        for (std::size_t b = 0; b < emp.masses.size(); ++b) {
            const double pth = cmp.experiment.masses[b];
            worst = std::max(worst, std::abs(emp.masses[b] - pth));
            sigma3 = std::max(sigma3, 3.0 * std::sqrt(pth * (1.0 - pth) /
                                                      static_cast<double>(cfg.n)));
        }
        gates.check("trajectory_consistency", worst, sigma3);
        report["pointer_measurement"]["sampled_masses"] = emp.masses;
        report["pointer_measurement"]["sample_count"] = emp.sample_count;
    }

    std::string csv = "bin,pushforward_mass,projector_mass\n";
    for (std::size_t b = 0; b < cmp.experiment.masses.size(); ++b)
        csv += cmp.experiment.bin_labels[b] + "," + num(cmp.experiment.masses[b]) +
               "," + num(cmp.projector_masses[b]) + "\n";
    write_file(out / "results.csv", csv);
    if (cfg.plot_histogram)
        write_file(out / "results.svg",
                   svg::histogram(cmp.experiment.bin_labels, cmp.experiment.masses,
                                  "pointer measurement result distribution"));
}

void run_free_gaussian(const RunConfig& cfg, const fs::path& out, json& report,
                       GateSet& gates) {
    const DynamicScenario s =
        scenario_with_overrides(make_free_gaussian_scenario(), cfg);
    const EnsembleRunResult res = run_ensemble(s, cfg.n, cfg.seed);
    const EquivarianceReport er = equivariance_report(res.ensemble, res.field_snapshots);
    double worst_ks = 0.0;
    for (const auto& snap : er.snapshots)
        for (double d : snap.ks_per_axis) worst_ks = std::max(worst_ks, d);
    gates.check("equivariance_ks", worst_ks, tol(cfg, "ks", er.threshold));

    double norm_drift = 0.0;
    for (const auto& f : res.field_snapshots)
        norm_drift = std::max(norm_drift, std::abs(norm(f) - 1.0));
    gates.check("unitarity", norm_drift, tol(cfg, "unitarity", 1e-9));

    // analytic check: a trajectory seeded at 1 sigma rides the spreading width
    const PropagatorPlan plan(s.grid, s.dt, s.potential);
    const FieldSequence fields = build_field_sequence(s.initial, plan, s.t_final, 10);
    std::vector<double> times;
    for (double t = 0.25; t <= s.t_final + 1e-12; t += 0.25) times.push_back(t);
    const Trajectory tr = integrate_trajectory({1.0, 0.0, 0.0}, fields, times,
                                               IntegrationOptions{s.dt_traj, true});
    double worst_track = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const double expected = builders::free_gaussian_width(1.0, tr.times[k]);
        worst_track = std::max(worst_track, std::abs(tr.unwrapped[k][0] - expected));
    }
    gates.check("sigma_tracking_error", worst_track, tol(cfg, "trajectory_error", 1e-3));

    report["free_gaussian"] = {{"equivariance_threshold", er.threshold},
                               {"worst_ks", worst_ks},
                               {"norm_drift", norm_drift},
                               {"sigma_tracking_error", worst_track}};
    write_trajectories_csv(out / "trajectories.csv", res.ensemble, 1);
    write_density_csv(out, res.field_snapshots);
}

void run_plane_wave(const RunConfig& cfg, const fs::path& out, json& report,
                    GateSet& gates) {
    const DynamicScenario s = scenario_with_overrides(make_plane_wave_scenario(), cfg);
    const VelocityField v = velocity_field(s.initial);
    double verr = 0.0;
    for (double c : v.components[0]) verr = std::max(verr, std::abs(c - 2.0));
    gates.check("velocity_error", verr, tol(cfg, "velocity_error", 1e-10));

    const EnsembleRunResult res = run_ensemble(s, cfg.n, cfg.seed);
    double terr = 0.0;
    for (const auto& tr : res.ensemble.trajectories) {
        const double x0 = tr.unwrapped.front()[0];
        for (std::size_t k = 0; k < tr.times.size(); ++k)
            terr = std::max(terr,
                            std::abs(tr.unwrapped[k][0] - (x0 + 2.0 * tr.times[k])));
    }
    gates.check("trajectory_error", terr, tol(cfg, "trajectory_error", 1e-9));

    report["plane_wave"] = {{"velocity_error", verr}, {"trajectory_error", terr}};
    write_trajectories_csv(out / "trajectories.csv", res.ensemble, 1);
    write_density_csv(out, res.field_snapshots);
}

} // namespace

int run(const RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
#endif
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);

    json report;
    report["scenario"] = cfg.scenario;
    report["seed"] = cfg.seed;
    report["n"] = cfg.n;
    report["timestamp"] = static_cast<long long>(std::time(nullptr));

    GateSet gates;
    if (cfg.scenario == "two_slit") run_two_slit(cfg, out, report, gates);
    else if (cfg.scenario == "stationary_universe") run_stationary(cfg, out, report, gates);
    else if (cfg.scenario == "branching_universe") run_branching(cfg, out, report, gates);
    else if (cfg.scenario == "pointer_measurement") run_pointer(cfg, out, report, gates);
    else if (cfg.scenario == "free_gaussian") run_free_gaussian(cfg, out, report, gates);
    else if (cfg.scenario == "plane_wave") run_plane_wave(cfg, out, report, gates);
    else throw ConfigError("scenario", "unknown scenario: " + cfg.scenario);

    report["gates"] = gates.gates;
    report["failures"] = gates.failures;
    report["pass"] = gates.failures.empty();
    write_file(out / "report.json", report.dump(2) + "\n");
    return gates.failures.empty() ? 0 : 1;
}

} // namespace bohm
