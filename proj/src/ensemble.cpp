#include "bohm/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/propagator.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bohm {

FieldSequence::FieldSequence(std::vector<double> times, std::vector<VelocityField> fields)
    : times_(std::move(times)), fields_(std::move(fields)) {
    if (times_.empty() || times_.size() != fields_.size())
        throw ConfigError("field_sequence", "need one time per velocity field");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw ConfigError("field_sequence", "times must be strictly increasing");
}

std::size_t FieldSequence::total_regularized() const {
    std::size_t n = 0;
    for (const auto& f : fields_) n += f.regularized_count;
    return n;
}

std::array<double, 3> FieldSequence::velocity(const std::array<double, 3>& point,
                                              double t, bool& near_node_out) const {
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
    if (hi == 0) hi = 1;
    if (hi >= times_.size()) hi = times_.size() - 1;
    const std::size_t lo = hi - 1;
    const double w = std::clamp((t - times_[lo]) / (times_[hi] - times_[lo]), 0.0, 1.0);

    const auto va = velocity_at(fields_[lo], point);
    const auto vb = velocity_at(fields_[hi], point);
    near_node_out = near_node(fields_[lo], point) || near_node(fields_[hi], point);
    std::array<double, 3> v{0.0, 0.0, 0.0};
    for (int a = 0; a < grid().dims(); ++a) v[a] = (1.0 - w) * va[a] + w * vb[a];
    return v;
}

FieldSequence build_field_sequence(const WaveField& f, const PropagatorPlan& plan,
                                   double t_final, int stride) {
    std::vector<double> times;
    std::vector<VelocityField> fields;
    WaveField cur = f;
    times.push_back(cur.time_tag);
    fields.push_back(velocity_field(cur));
    const long nsteps = std::lround((t_final - f.time_tag) / plan.dt());
    for (long s = 1; s <= nsteps; ++s) {
        plan.step_inplace(cur);
        if (s % stride == 0 || s == nsteps) {
            times.push_back(cur.time_tag);
            fields.push_back(velocity_field(cur));
        }
    }
    if (times.size() == 1) { // static field: duplicate so time brackets exist
        times.push_back(times.front() + std::max(1.0, std::abs(t_final)));
        fields.push_back(fields.front());
    }
    return FieldSequence(std::move(times), std::move(fields));
}

namespace {

struct StepResult {
    bool touched_node = false;
    std::size_t clamps = 0;
};

std::array<double, 3> eval(const FieldSequence& fields, const std::array<double, 3>& p,
                           double t, double vmax, bool clamp, StepResult& res) {
    const GridSpec& g = fields.grid();
    std::array<double, 3> wrapped = p;
    for (int a = 0; a < g.dims(); ++a) wrapped[a] = g.wrap(a, p[a]);
    bool nn = false;
    auto v = fields.velocity(wrapped, t, nn);
    if (nn) res.touched_node = true;
    if (clamp) {
        double mag2 = 0.0;
        for (int a = 0; a < g.dims(); ++a) mag2 += v[a] * v[a];
        const double mag = std::sqrt(mag2);
        if (mag > vmax) {
            const double s = vmax / mag;
            for (int a = 0; a < g.dims(); ++a) v[a] *= s;
            ++res.clamps;
        }
    }
    for (int a = 0; a < g.dims(); ++a)
        if (!std::isfinite(v[a]))
            throw ConfigError("integrate_trajectory",
                              "non-finite velocity after regularization");
    return v;
}

void rk4_step(const FieldSequence& fields, std::array<double, 3>& p, double t,
              double h, double vmax, bool clamp, StepResult& res) {
    const int d = fields.grid().dims();
    const auto k1 = eval(fields, p, t, vmax, clamp, res);
    std::array<double, 3> q = p;
    for (int a = 0; a < d; ++a) q[a] = p[a] + 0.5 * h * k1[a];
    const auto k2 = eval(fields, q, t + 0.5 * h, vmax, clamp, res);
    for (int a = 0; a < d; ++a) q[a] = p[a] + 0.5 * h * k2[a];
    const auto k3 = eval(fields, q, t + 0.5 * h, vmax, clamp, res);
    for (int a = 0; a < d; ++a) q[a] = p[a] + h * k3[a];
    const auto k4 = eval(fields, q, t + h, vmax, clamp, res);
    for (int a = 0; a < d; ++a)
        p[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
}

} // namespace

Trajectory integrate_trajectory(const std::array<double, 3>& start,
                                const FieldSequence& fields,
                                const std::vector<double>& sample_times,
                                const IntegrationOptions& opts) {
    if (sample_times.empty())
        throw ConfigError("sample_times", "need at least one sample time");
    if (!(opts.dt_traj > 0)) throw ConfigError("dt_traj", "must be positive");
    const GridSpec& g = fields.grid();
    const double t0 = fields.t_min();
    const double h = opts.dt_traj;
    const double vmax = g.domain_diameter() / (10.0 * h);

    std::vector<long> sample_steps;
    for (double t : sample_times) {
        const long s = std::lround((t - t0) / h);
        if (s < 0) throw ConfigError("sample_times", "before sequence start");
        if (!sample_steps.empty() && s <= sample_steps.back())
            throw ConfigError("sample_times", "must be strictly increasing");
        sample_steps.push_back(s);
    }

    Trajectory traj;
    std::array<double, 3> p = start; // unwrapped
    long step_idx = 0;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.unwrapped.push_back(p);
        std::array<double, 3> w = p;
        for (int a = 0; a < g.dims(); ++a) w[a] = g.wrap(a, p[a]);
        traj.positions.push_back(w);
    };

    std::size_t next = 0;
    if (sample_steps[0] == 0) {
        record(t0);
        ++next;
    }
    const long last = sample_steps.back();
    while (step_idx < last) {
        const double t = t0 + step_idx * h;
        StepResult res;
        std::array<double, 3> trial = p;
        rk4_step(fields, trial, t, h, vmax, opts.enable_clamp, res);
        if (res.touched_node) {
            // retry as two half steps; nodes make the field locally stiff
            ++traj.node_encounters;
            StepResult res2;
            std::array<double, 3> fine = p;
            rk4_step(fields, fine, t, 0.5 * h, vmax, opts.enable_clamp, res2);
            rk4_step(fields, fine, t + 0.5 * h, 0.5 * h, vmax, opts.enable_clamp, res2);
            p = fine;
            traj.clamp_events += res2.clamps;
        } else {
            p = trial;
            traj.clamp_events += res.clamps;
        }
        ++step_idx;
        if (next < sample_steps.size() && sample_steps[next] == step_idx) {
            record(t0 + step_idx * h);
            ++next;
        }
    }
    return traj;
}

TrajectoryEnsemble integrate_ensemble(const std::vector<std::array<double, 3>>& starts,
                                      const FieldSequence& fields,
                                      const std::vector<double>& sample_times,
                                      const IntegrationOptions& opts,
                                      std::uint64_t seed,
                                      const std::string& scenario_id) {
    TrajectoryEnsemble e;
    e.seed = seed;
    e.scenario_id = scenario_id;
    e.trajectories.resize(starts.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(starts.size()); ++i) {
        try {
            e.trajectories[static_cast<std::size_t>(i)] = integrate_trajectory(
                starts[static_cast<std::size_t>(i)], fields, sample_times, opts);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return e;
}

EquivarianceReport equivariance_report(const TrajectoryEnsemble& e,
                                       const std::vector<WaveField>& snapshots) {
    if (e.trajectories.empty())
        throw ConfigError("equivariance_report", "empty ensemble");
    EquivarianceReport rep;
    rep.sample_count = e.trajectories.size();
    rep.threshold = ks_critical_1pct(rep.sample_count);
    rep.pass = true;
    const auto& times = e.trajectories.front().times;
    for (const auto& snap : snapshots) {
        std::size_t ti = times.size();
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - snap.time_tag) < 1e-9) { ti = i; break; }
        if (ti == times.size())
            throw ConfigError("equivariance_report",
                              "snapshot time not among trajectory sample times");
        const DensityField d = density(snap);
        EquivarianceReport::Snapshot s;
        s.time = snap.time_tag;
        s.pass = true;
        for (int a = 0; a < snap.grid.dims(); ++a) {
            PiecewiseLinearCdf cdf(marginal(d, a), snap.grid.axis(a).lo, snap.grid.step(a));
            std::vector<double> xs(e.trajectories.size());
            for (std::size_t i = 0; i < e.trajectories.size(); ++i)
                xs[i] = e.trajectories[i].positions[ti][a];
            const double ks = ks_distance(std::move(xs), cdf);
            s.ks_per_axis.push_back(ks);
            if (ks >= rep.threshold) s.pass = false;
        }
        rep.pass = rep.pass && s.pass;
        rep.snapshots.push_back(std::move(s));
    }
    return rep;
}

} // namespace bohm
