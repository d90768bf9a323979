#include "bohm/subsystem.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/builders.hpp"
#include "bohm/interp.hpp"
#include "bohm/propagator.hpp"

namespace bohm {

namespace {

GridSpec x_subgrid(const GridSpec& g) {
    return make_grid({g.axis(0)}, g.hbar(), {g.mass(0)});
}

GridSpec y_subgrid(const GridSpec& g) {
    return make_grid({g.axis(1)}, g.hbar(), {g.mass(1)});
}

} // namespace

ConditionalSlice conditional_wavefunction(const WaveField& f, double y_value) {
    const GridSpec& g = f.grid;
    if (g.dims() != 2)
        throw ConfigError("conditional_wavefunction", "needs a 2D (x,y) field");
    if (y_value < g.axis(1).lo || y_value >= g.axis(1).hi)
        throw ConfigError("y_value", "outside domain");

    const int nx = g.axis(0).n;
    const int ny = g.axis(1).n;
    int base;
    double frac;
    periodic_locate(y_value, g.axis(1).lo, g.step(1), ny, base, frac);
    const auto w = catmull_rom_weights(frac);

    ConditionalSlice slice;
    slice.time = f.time_tag;
    slice.y_value = y_value;
    slice.raw = WaveField{x_subgrid(g), std::vector<Complex>(static_cast<std::size_t>(nx)),
                          f.time_tag};
    for (int i = 0; i < nx; ++i) {
        Complex s = 0.0;
        for (int o = -1; o <= 2; ++o) {
            const int j = (base + o + ny) % ny;
            s += w[static_cast<std::size_t>(o + 1)] *
                 f.amplitudes[static_cast<std::size_t>(i) * ny + static_cast<std::size_t>(j)];
        }
        slice.raw.amplitudes[static_cast<std::size_t>(i)] = s;
    }

    const double threshold = 1e-10 * norm(f) * std::sqrt(g.cell_volume());
    if (norm(slice.raw) < threshold) {
        slice.nodal = true;
        slice.normalized = WaveField{slice.raw.grid, {}, f.time_tag};
    } else {
        slice.normalized = normalized(slice.raw);
    }
    return slice;
}

double projective_distance(const WaveField& a, const WaveField& b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0)
        throw ConfigError("projective_distance", "zero input field");
    return 1.0 - std::abs(inner_product(a, b)) / (na * nb);
}

GridSpec stationary_universe_grid(int n) {
    return make_grid({{0.0, 2.0 * M_PI, n}, {0.0, 2.0 * M_PI, n}});
}

WaveField stationary_universe_field(const GridSpec& grid) {
    return init_field(grid, [](const std::array<double, 3>& q) {
        return std::polar(1.0, q[0] - q[1]) * std::cos(q[0] + q[1]);
    });
}

WaveField stationary_reference(const GridSpec& x_grid, double y0, double t) {
    return init_field(x_grid, [y0, t](const std::array<double, 3>& q) {
        return std::polar(1.0, q[0] + t) * std::cos(q[0] + y0 - t);
    });
}

namespace {

/// || i (a - b) / (2 dt) - H c || / ||H c|| with fields on the same grid.
double schrodinger_residual(const WaveField& next, const WaveField& prev,
                            const WaveField& mid, double dt) {
    WaveField hf = apply_hamiltonian(mid, zero_potential(mid.grid));
    double r2 = 0.0;
    double h2 = 0.0;
    for (std::size_t i = 0; i < hf.amplitudes.size(); ++i) {
        const Complex ddt = Complex(0.0, 1.0) *
                            (next.amplitudes[i] - prev.amplitudes[i]) / (2.0 * dt);
        r2 += std::norm(ddt - hf.amplitudes[i]);
        h2 += std::norm(hf.amplitudes[i]);
    }
    return std::sqrt(r2 / h2);
}

} // namespace

EmergenceReport run_stationary_universe(const StationaryUniverseParams& p) {
    const GridSpec grid = stationary_universe_grid(p.grid_points);
    const WaveField psi0 = stationary_universe_field(grid);
    const Potential v = zero_potential(grid);
    const PropagatorPlan plan(grid, p.dt, v);

    std::vector<double> sample_times;
    const double spacing = p.t_final / p.sample_count;
    for (int k = 0; k <= p.sample_count; ++k) sample_times.push_back(k * spacing);

    const std::vector<WaveField> snapshots = evolve(psi0, plan, p.t_final, sample_times);
    const FieldSequence fields = build_field_sequence(psi0, plan, p.t_final, 10);
    const Trajectory traj = integrate_trajectory({p.x0, p.y0, 0.0}, fields, sample_times,
                                                 IntegrationOptions{p.dt_traj, true});

    const GridSpec xg = x_subgrid(grid);
    EmergenceReport rep;
    std::vector<WaveField> raw_slices;
    for (std::size_t k = 0; k < sample_times.size(); ++k) {
        const double t = sample_times[k];
        const double y_wrapped = traj.positions[k][1];
        const ConditionalSlice slice = conditional_wavefunction(snapshots[k], y_wrapped);
        rep.times.push_back(t);
        rep.y_positions.push_back(traj.unwrapped[k][1]);
        if (slice.nodal) {
            ++rep.nodal_times;
            rep.projective_distances.push_back(std::nan(""));
            raw_slices.push_back(slice.raw);
            continue;
        }
        const WaveField ref = stationary_reference(xg, p.y0, t);
        const double dist = projective_distance(slice.normalized, ref);
        rep.projective_distances.push_back(dist);
        rep.max_projective_distance = std::max(rep.max_projective_distance, dist);
        rep.max_y_deviation = std::max(rep.max_y_deviation,
                                       std::abs(traj.unwrapped[k][1] - (p.y0 - t)));
        raw_slices.push_back(slice.raw);
    }
    for (std::size_t k = 1; k + 1 < raw_slices.size(); ++k) {
        if (raw_slices[k - 1].amplitudes.empty() || raw_slices[k + 1].amplitudes.empty())
            continue;
        rep.max_schrodinger_residual = std::max(
            rep.max_schrodinger_residual,
            schrodinger_residual(raw_slices[k + 1], raw_slices[k - 1], raw_slices[k],
                                 spacing));
    }
    return rep;
}

BranchingReport run_branching_universe(const BranchingUniverseParams& p) {
    const GridSpec grid =
        make_grid({{-12.0, 12.0, 128}, {-24.0, 24.0, 512}});
    const GridSpec xg = x_subgrid(grid);
    const GridSpec yg = y_subgrid(grid);

    const double c = p.packet_center;
    const double w = p.packet_width;
    const double vel = p.packet_velocity;

    auto phi_upper = init_field(yg, [&](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], c, w, vel);
    });
    auto phi_lower = init_field(yg, [&](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], -c, w, -vel);
    });
    // spatial overlap of the packet envelopes; the complex inner product
    // would be suppressed by the opposite momenta even for touching packets
    double overlap = 0.0;
    for (std::size_t j = 0; j < yg.size(); ++j)
        overlap += std::abs(phi_upper.amplitudes[j]) *
                   std::abs(phi_lower.amplitudes[j]);
    overlap *= yg.cell_volume();
    if (overlap >= 1e-8)
        throw ConfigError("packets", "environment packets are not disjoint");

    double upper_x_center = p.upper_state_center;
    double lower_x_center = p.lower_state_center;
    if (p.swap_branch_states) std::swap(upper_x_center, lower_x_center);
    auto psi_upper = init_field(xg, [&](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], upper_x_center, 1.0);
    });
    auto psi_lower = init_field(xg, [&](const std::array<double, 3>& q) {
        return builders::gaussian(q[0], lower_x_center, 1.0);
    });

    const int nx = grid.axis(0).n;
    const int ny = grid.axis(1).n;
    WaveField composite{grid, std::vector<Complex>(grid.size()), 0.0};
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            composite.amplitudes[static_cast<std::size_t>(i) * ny + j] =
                psi_upper.amplitudes[static_cast<std::size_t>(i)] *
                    phi_upper.amplitudes[static_cast<std::size_t>(j)] +
                psi_lower.amplitudes[static_cast<std::size_t>(i)] *
                    phi_lower.amplitudes[static_cast<std::size_t>(j)];
    composite = normalized(composite);

    const PropagatorPlan plan2d(grid, p.dt, zero_potential(grid));
    std::vector<double> sample_times;
    const double spacing = p.t_final / (p.sample_count - 1);
    for (int k = 0; k < p.sample_count; ++k) sample_times.push_back(k * spacing);

    const std::vector<WaveField> snaps = evolve(composite, plan2d, p.t_final, sample_times);
    const FieldSequence fields = build_field_sequence(composite, plan2d, p.t_final, 10);
    const Trajectory traj =
        integrate_trajectory({upper_x_center + 0.3, p.y_start, 0.0}, fields,
                             sample_times, IntegrationOptions{p.dt_traj, true});

    // reference 1D evolutions of the tracked branch
    const PropagatorPlan plan_y(yg, p.dt, zero_potential(yg));
    const PropagatorPlan plan_x(xg, p.dt, zero_potential(xg));
    const bool upper_branch = std::abs(p.y_start - c) < std::abs(p.y_start + c);
    const WaveField& phi_ref0 = upper_branch ? phi_upper : phi_lower;
    const WaveField& psi_ref0 = upper_branch ? psi_upper : psi_lower;
    const std::vector<WaveField> phi_ref = evolve(phi_ref0, plan_y, p.t_final, sample_times);
    const std::vector<WaveField> psi_ref = evolve(psi_ref0, plan_x, p.t_final, sample_times);

    BranchingReport rep;
    rep.packet_overlap = overlap;
    rep.emergence.branch_id = upper_branch ? "upper" : "lower";
    for (std::size_t k = 0; k < sample_times.size(); ++k) {
        const DensityField d = density(phi_ref[k]);
        double mass = 0.0, mean = 0.0;
        for (int j = 0; j < ny; ++j) {
            const double x = yg.coord(0, j);
            mass += d.values[static_cast<std::size_t>(j)];
            mean += x * d.values[static_cast<std::size_t>(j)];
        }
        mean /= mass;
        double var = 0.0;
        for (int j = 0; j < ny; ++j) {
            const double x = yg.coord(0, j);
            var += (x - mean) * (x - mean) * d.values[static_cast<std::size_t>(j)];
        }
        var /= mass;
        const double width = std::sqrt(var);
        rep.branch_centers.push_back(mean);
        rep.branch_widths.push_back(width);

        const double y = traj.unwrapped[k][1];
        rep.emergence.times.push_back(sample_times[k]);
        rep.emergence.y_positions.push_back(y);
        rep.max_center_offset_in_widths =
            std::max(rep.max_center_offset_in_widths, std::abs(y - mean) / width);

        const ConditionalSlice slice =
            conditional_wavefunction(snaps[k], traj.positions[k][1]);
        if (slice.nodal) {
            ++rep.emergence.nodal_times;
            rep.emergence.projective_distances.push_back(std::nan(""));
            continue;
        }
        const double dist = projective_distance(slice.normalized, psi_ref[k]);
        rep.emergence.projective_distances.push_back(dist);
        rep.emergence.max_projective_distance =
            std::max(rep.emergence.max_projective_distance, dist);
    }
    return rep;
}

} // namespace bohm
