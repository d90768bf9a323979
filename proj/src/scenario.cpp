#include "bohm/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/builders.hpp"
#include "bohm/propagator.hpp"
#include "bohm/rng.hpp"
#include "bohm/sampling.hpp"

namespace bohm {

DynamicScenario make_two_slit_scenario() {
    DynamicScenario s;
    s.id = "two_slit";
    s.description = "two-slit interference: longitudinal packet times two "
                    "transverse slit Gaussians, free evolution to a screen";
    s.grid = make_grid({{-12.0, 28.0, 256}, {-24.0, 24.0, 256}});
    // transverse packet width 0.4: by the screen time the two slit packets
    // have spread well past the fringe spacing, giving deep interference
    s.initial = init_field(s.grid, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], -2.0, 1.5, 4.0) *
               builders::double_gaussian(q[1], 2.0, 0.4);
    });
    s.potential = zero_potential(s.grid);
    s.dt = 0.01;
    s.t_final = 4.0;
    s.dt_traj = 0.01;
    s.snapshot_times = {1.0, 2.0, 3.0, 4.0};
    s.sampling = DynamicScenario::Sampling::Equilibrium;
    s.slit_center = 2.0;
    s.slit_halfwidth = 0.7;
    s.slit_plane = -2.0;
    s.screen_coord = 14.0;
    s.screen_time = 4.0;
    return s;
}

DynamicScenario make_free_gaussian_scenario() {
    DynamicScenario s;
    s.id = "free_gaussian";
    s.description = "1D spreading Gaussian packet, equilibrium ensemble";
    s.grid = make_grid({{-16.0, 16.0, 256}});
    s.initial = init_field(s.grid, [](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], 0.0, 1.0);
    });
    s.potential = zero_potential(s.grid);
    s.dt = 0.005;
    s.t_final = 2.0;
    s.dt_traj = 0.005;
    s.snapshot_times = {0.5, 1.0, 1.5, 2.0};
    return s;
}

DynamicScenario make_plane_wave_scenario() {
    DynamicScenario s;
    s.id = "plane_wave";
    s.description = "1D plane wave e^{ikx}, k=2: uniform density, constant drift";
    s.grid = make_grid({{0.0, 16.0 * M_PI, 256}});
    s.initial = init_field(s.grid, [](const std::array<double, 3>& q) {
        return builders::plane_wave(q[0], 2.0);
    });
    s.potential = zero_potential(s.grid);
    s.dt = 0.01;
    s.t_final = 1.0;
    s.dt_traj = 0.001;
    s.snapshot_times = {0.5, 1.0};
    return s;
}

namespace {

std::vector<ScenarioInfo>& registry() {
    static std::vector<ScenarioInfo> reg = {
        {"two_slit", make_two_slit_scenario().description},
        {"stationary_universe",
         "two free particles on a periodic line with a stationary universal "
         "field; emergent subsystem Schroedinger evolution"},
        {"branching_universe",
         "composite with two moving narrow environment packets; branch "
         "tracking and conditional-slice comparison"},
        {"pointer_measurement",
         "impulsive pointer measurement of coarse position; POVM statistics"},
        {"free_gaussian", make_free_gaussian_scenario().description},
        {"plane_wave", make_plane_wave_scenario().description},
    };
    return reg;
}

} // namespace

std::vector<ScenarioInfo> list_scenarios() { return registry(); }

void register_scenario(const ScenarioInfo& info) { registry().push_back(info); }

void reset_scenario_registry() { registry().clear(); }

bool scenario_registered(const std::string& id) {
    const auto& reg = registry();
    return std::any_of(reg.begin(), reg.end(),
                       [&](const ScenarioInfo& s) { return s.id == id; });
}

std::vector<std::array<double, 3>> sample_scenario_starts(const DynamicScenario& s,
                                                          std::size_t n,
                                                          std::uint64_t seed) {
    if (s.sampling == DynamicScenario::Sampling::Equilibrium)
        return sample_equilibrium(density(s.initial), n, seed);

    // uniform over the union of the two slit intervals on the transverse
    // axis, longitudinal coordinate at the slit plane
    std::vector<std::array<double, 3>> starts(n, {0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng = CounterRng::for_stream(seed, i);
        const double u = rng.next_double();
        double y;
        if (u < 0.5)
            y = s.slit_center - s.slit_halfwidth + 2.0 * u * 2.0 * s.slit_halfwidth;
        else
            y = -s.slit_center - s.slit_halfwidth +
                2.0 * (u - 0.5) * 2.0 * s.slit_halfwidth;
        starts[i] = {s.slit_plane, y, 0.0};
    }
    return starts;
}

EnsembleRunResult run_ensemble(const DynamicScenario& s, std::size_t n,
                               std::uint64_t seed) {
    if (!scenario_registered(s.id))
        throw ConfigError("scenario", "unknown scenario: " + s.id);
    const PropagatorPlan plan(s.grid, s.dt, s.potential);

    std::vector<double> sample_times = s.snapshot_times;
    if (sample_times.empty() || sample_times.front() > 0.0)
        sample_times.insert(sample_times.begin(), 0.0);

    EnsembleRunResult out;
    out.field_snapshots = evolve(s.initial, plan, s.t_final, s.snapshot_times);
    const FieldSequence fields = build_field_sequence(s.initial, plan, s.t_final, 10);
    const auto starts = sample_scenario_starts(s, n, seed);
    out.ensemble = integrate_ensemble(starts, fields, sample_times,
                                      IntegrationOptions{s.dt_traj, true}, seed, s.id);
    return out;
}

} // namespace bohm
