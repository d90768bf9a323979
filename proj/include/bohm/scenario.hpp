#ifndef BOHM_SCENARIO_HPP
#define BOHM_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bohm/ensemble.hpp"

namespace bohm {

/// A registered scenario: field dynamics plus the initial-point rule for
/// trajectory ensembles.
struct DynamicScenario {
    std::string id;
    std::string description;
    GridSpec grid;
    WaveField initial;
    Potential potential;
    double dt = 0.01;
    double t_final = 1.0;
    double dt_traj = 0.01;
    std::vector<double> snapshot_times;

    enum class Sampling { Equilibrium, UniformInSlits } sampling = Sampling::Equilibrium;

    // two-slit geometry (slits along axis 1, propagation along axis 0)
    double slit_center = 2.0;
    double slit_halfwidth = 0.7;
    double slit_plane = -2.0;   // longitudinal start coordinate
    double screen_coord = 14.0; // longitudinal screen position
    double screen_time = 4.0;
};

DynamicScenario make_two_slit_scenario();
DynamicScenario make_free_gaussian_scenario();
DynamicScenario make_plane_wave_scenario();

/// Scenario registry used by the CLI; ids also cover the scenarios whose
/// orchestration lives in the subsystem and measurement modules.
struct ScenarioInfo {
    std::string id;
    std::string description;
};
std::vector<ScenarioInfo> list_scenarios();
void register_scenario(const ScenarioInfo& info);
void reset_scenario_registry();  // test harness hook
bool scenario_registered(const std::string& id);

/// Samples initial points per the scenario rule.
std::vector<std::array<double, 3>> sample_scenario_starts(const DynamicScenario& s,
                                                          std::size_t n,
                                                          std::uint64_t seed);

struct EnsembleRunResult {
    TrajectoryEnsemble ensemble;
    std::vector<WaveField> field_snapshots;  // at snapshot_times
};

/// Samples starts, evolves the field, and integrates all trajectories
/// against shared snapshots. Trajectory sample times are the scenario
/// snapshot times (with t=0 prepended when absent).
EnsembleRunResult run_ensemble(const DynamicScenario& s, std::size_t n,
                               std::uint64_t seed);

} // namespace bohm

#endif
