#include "bohm/propagator.hpp"

#include <cmath>
#include <cstdio>

namespace bohm {

PropagatorPlan::PropagatorPlan(const GridSpec& grid, double dt, Potential potential)
    : grid_(grid), dt_(dt), potential_(std::move(potential)),
      fft_(std::make_shared<SpectralTransform>(grid)) {
    if (dt_ == 0.0) throw ConfigError("dt", "must be nonzero");
    if (!potential_.grid.same_as(grid_))
        throw ConfigError("potential", "grid mismatch");
    if (std::abs(dt_) * grid_.max_kinetic_energy() / grid_.hbar() >= 2.0 * M_PI)
        throw ConfigError("dt", "dt exceeds spectral stability bound");

    kinetic_energy_.resize(grid_.size());
    kinetic_phase_.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        const auto idx = grid_.unflatten(i);
        double e = 0.0;
        for (int a = 0; a < grid_.dims(); ++a) {
            const double k = grid_.wavenumber(a, idx[a]);
            e += grid_.hbar() * grid_.hbar() * k * k / (2.0 * grid_.mass(a));
        }
        kinetic_energy_[i] = e;
        kinetic_phase_[i] = std::polar(1.0, -e * dt_ / grid_.hbar());
    }
    // eager phase tables so a shared plan has no mutable state
    const int nframes = potential_.time_dependent
                            ? static_cast<int>(potential_.frames.size())
                            : 1;
    pot_phase_cache_.resize(static_cast<std::size_t>(nframes));
    for (int fr = 0; fr < nframes; ++fr) {
        const std::vector<double>& v =
            potential_.time_dependent ? potential_.frames[static_cast<std::size_t>(fr)]
                                      : potential_.values;
        auto& cache = pot_phase_cache_[static_cast<std::size_t>(fr)];
        cache.resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            cache[i] = std::polar(1.0, -v[i] * dt_ / (2.0 * grid_.hbar()));
    }
}

const std::vector<Complex>& PropagatorPlan::half_potential_phase(int frame) const {
    return pot_phase_cache_[static_cast<std::size_t>(frame)];
}

void PropagatorPlan::step_inplace(WaveField& f) const {
    if (!f.grid.same_as(grid_)) throw ConfigError("step", "grid mismatch");
    const double t_mid = f.time_tag + 0.5 * dt_;
    const auto& vp = half_potential_phase(potential_.frame_at(t_mid));
    auto& a = f.amplitudes;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= vp[i];
    fft_->forward(a);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= kinetic_phase_[i];
    fft_->inverse(a);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= vp[i];
    f.time_tag += dt_;
}

WaveField step(const WaveField& f, const PropagatorPlan& plan) {
    WaveField g = f;
    plan.step_inplace(g);
    return g;
}

std::vector<WaveField> evolve(const WaveField& f, const PropagatorPlan& plan,
                              double t_final, const std::vector<double>& snapshot_times) {
    const double dt = plan.dt();
    const double span = t_final - f.time_tag;
    if (span * dt < 0.0)
        throw ConfigError("t_final", "final time lies behind the stepping direction");
    const long nsteps = std::lround(span / dt);

    std::vector<long> snap_steps;
    double prev = f.time_tag;
    for (double t : snapshot_times) {
        if ((t - f.time_tag) * (dt > 0 ? 1.0 : -1.0) < -1e-12 ||
            (t - t_final) * (dt > 0 ? 1.0 : -1.0) > 1e-12)
            throw ConfigError("snapshot_times", "snapshot outside [start, t_final]");
        if ((t - prev) * (dt > 0 ? 1.0 : -1.0) < -1e-12)
            throw ConfigError("snapshot_times", "snapshot times must be nondecreasing");
        prev = t;
        const long s = std::lround((t - f.time_tag) / dt);
        if (std::abs(f.time_tag + s * dt - t) > 1e-9 * std::abs(dt))
            std::fprintf(stderr,
                         "[propagator] snapshot time %.12g rounded to step lattice %.12g\n",
                         t, f.time_tag + s * dt);
        snap_steps.push_back(s);
    }

    std::vector<WaveField> out;
    WaveField cur = f;
    std::size_t next = 0;
    while (next < snap_steps.size() && snap_steps[next] == 0) {
        out.push_back(cur);
        ++next;
    }
    for (long s = 1; s <= nsteps; ++s) {
        plan.step_inplace(cur);
        while (next < snap_steps.size() && snap_steps[next] == s) {
            out.push_back(cur);
            ++next;
        }
    }
    return out;
}

WaveField apply_hamiltonian(const WaveField& f, const Potential& v) {
    if (!f.grid.same_as(v.grid)) throw ConfigError("apply_hamiltonian", "grid mismatch");
    const GridSpec& g = f.grid;
    SpectralTransform fft(g);
    WaveField out = f;
    fft.forward(out.amplitudes);
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
        const auto idx = g.unflatten(i);
        double e = 0.0;
        for (int a = 0; a < g.dims(); ++a) {
            const double k = g.wavenumber(a, idx[a]);
            e += g.hbar() * g.hbar() * k * k / (2.0 * g.mass(a));
        }
        out.amplitudes[i] *= e;
    }
    fft.inverse(out.amplitudes);
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i)
        out.amplitudes[i] += v.values[i] * f.amplitudes[i];
    return out;
}

double eigen_residual(const WaveField& f, const Potential& v, double energy) {
    WaveField hf = apply_hamiltonian(f, v);
    double r2 = 0.0;
    for (std::size_t i = 0; i < hf.amplitudes.size(); ++i)
        r2 += std::norm(hf.amplitudes[i] - energy * f.amplitudes[i]);
    const double n = norm(f);
    return std::sqrt(r2 * f.grid.cell_volume()) / n;
}

} // namespace bohm
