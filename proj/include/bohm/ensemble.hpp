#ifndef BOHM_ENSEMBLE_HPP
#define BOHM_ENSEMBLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bohm/guidance.hpp"
#include "bohm/stats.hpp"

namespace bohm {

/// A single configuration-space path, recorded at the requested sample times.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::array<double, 3>> positions;  // wrapped into the domain
    std::vector<std::array<double, 3>> unwrapped;
    std::size_t node_encounters = 0;
    std::size_t clamp_events = 0;
};

struct TrajectoryEnsemble {
    std::vector<Trajectory> trajectories;
    std::uint64_t seed = 0;
    std::string scenario_id;
};

struct EquivarianceReport {
    struct Snapshot {
        double time;
        std::vector<double> ks_per_axis;
        bool pass;
    };
    std::vector<Snapshot> snapshots;
    std::size_t sample_count = 0;
    double threshold = 0.0;
    bool pass = false;
};

/// Time-indexed guidance-velocity evaluator over stored field snapshots,
/// linear in t between snapshots, cubic in space within each snapshot.
class FieldSequence {
public:
    FieldSequence(std::vector<double> times, std::vector<VelocityField> fields);

    const GridSpec& grid() const { return fields_.front().grid; }
    double t_min() const { return times_.front(); }
    double t_max() const { return times_.back(); }
    std::size_t total_regularized() const;

    /// Raw interpolated velocity; sets near_node when the spatial stencil
    /// touches a node-flagged cell in either bracketing snapshot.
    std::array<double, 3> velocity(const std::array<double, 3>& point, double t,
                                   bool& near_node_out) const;

private:
    std::vector<double> times_;
    std::vector<VelocityField> fields_;
};

/// Builds a FieldSequence by evolving f with the plan and computing the
/// guidance field every `stride` steps (stride*dt <= 10*dt by contract).
FieldSequence build_field_sequence(const WaveField& f, const class PropagatorPlan& plan,
                                   double t_final, int stride = 10);

struct IntegrationOptions {
    double dt_traj = 1e-3;
    /// |v| above diameter/(10*dt_traj) is clamped and counted.
    bool enable_clamp = true;
};

/// Classical RK4 along the guidance field. A step whose stencil touches a
/// node-flagged region is retried as two half steps and counted.
/// sample_times must be increasing multiples of dt_traj starting at the
/// sequence start time.
Trajectory integrate_trajectory(const std::array<double, 3>& start,
                                const FieldSequence& fields,
                                const std::vector<double>& sample_times,
                                const IntegrationOptions& opts);

/// Integrates all starts in parallel; trajectory i uses only RNG-free state,
/// so results are bitwise reproducible for any worker count.
TrajectoryEnsemble integrate_ensemble(const std::vector<std::array<double, 3>>& starts,
                                      const FieldSequence& fields,
                                      const std::vector<double>& sample_times,
                                      const IntegrationOptions& opts,
                                      std::uint64_t seed,
                                      const std::string& scenario_id);

/// Per-axis KS distance of the empirical marginal at each snapshot time
/// against the marginal of |psi_t|^2. Pass iff all below 1.63/sqrt(n).
EquivarianceReport equivariance_report(const TrajectoryEnsemble& e,
                                       const std::vector<WaveField>& snapshots);

} // namespace bohm

#endif
