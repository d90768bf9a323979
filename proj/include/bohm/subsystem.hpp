#ifndef BOHM_SUBSYSTEM_HPP
#define BOHM_SUBSYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "bohm/ensemble.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

/// psi_t(x) = Psi_t(x, Y): the universal field sliced at the actual
/// environment coordinate, interpolated along the environment axis.
struct ConditionalSlice {
    double time = 0.0;
    double y_value = 0.0;
    WaveField raw;         // unnormalized slice on the x-grid
    WaveField normalized;  // empty amplitudes when nodal
    bool nodal = false;    // environment point on (numerically) a nodal line
};

/// For a 2D field with axis 0 = system (x) and axis 1 = environment (y).
ConditionalSlice conditional_wavefunction(const WaveField& f, double y_value);

/// 1 - |<a,b>| / (||a|| ||b||); zero iff equal up to a global complex scalar.
double projective_distance(const WaveField& a, const WaveField& b);

struct EmergenceReport {
    std::vector<double> times;
    std::vector<double> projective_distances;
    std::vector<double> y_positions;            // unwrapped
    double max_projective_distance = 0.0;
    double max_y_deviation = 0.0;               // vs the predicted Y(t)
    double max_schrodinger_residual = 0.0;      // of the raw slice sequence
    std::string branch_id;                      // packet scenarios only
    std::size_t nodal_times = 0;
};

struct StationaryUniverseParams {
    double x0 = 1.0;
    double y0 = 0.5;
    double t_final = 5.0;
    int sample_count = 50;
    int grid_points = 64;
    double dt = 1e-3;       // propagator step
    double dt_traj = 1e-3;
};

/// Two free particles on a 2pi-periodic line with the stationary field
/// e^{i(x-y)} cos(x+y) (an H-eigenstate with eigenvalue 2). Integrates
/// (X(t), Y(t)) under guidance, slices the field at Y(t), and compares
/// against the closed-form single-particle Schroedinger solution.
EmergenceReport run_stationary_universe(const StationaryUniverseParams& p);

/// Builder for the stationary-universe field on a given 2D grid.
WaveField stationary_universe_field(const GridSpec& grid);
GridSpec stationary_universe_grid(int n);

/// Closed-form reference: normalized e^{i(x+t)} cos(x + y0 - t) on the x-grid.
WaveField stationary_reference(const GridSpec& x_grid, double y0, double t);

struct BranchingUniverseParams {
    double packet_center = 4.0;    // environment packets sit at +-center
    double packet_width = 0.4;
    double packet_velocity = 2.0;  // upper packet moves +v, lower -v
    double t_final = 2.0;
    double y_start = 4.1;          // inside the upper packet
    double upper_state_center = -2.0;  // x-state attached to the upper packet
    double lower_state_center = 2.0;
    int sample_count = 21;
    bool swap_branch_states = false;
    double dt = 0.004;
    double dt_traj = 1e-3;
};

struct BranchingReport {
    EmergenceReport emergence;
    std::vector<double> branch_centers;  // reference packet mean per sample time
    std::vector<double> branch_widths;   // reference packet std per sample time
    double max_center_offset_in_widths = 0.0;
    double packet_overlap = 0.0;
};

/// Composite psi1(x)phi1(y) + psi2(x)phi2(y) with narrow disjoint moving
/// y-packets. Tracks Y(t), identifies the branch containing Y(0), and
/// compares the conditional slice against the independently evolved branch
/// x-state. Throws when the packets are not disjoint (overlap >= 1e-8).
BranchingReport run_branching_universe(const BranchingUniverseParams& p);

} // namespace bohm

#endif
