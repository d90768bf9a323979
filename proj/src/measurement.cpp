#include "bohm/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/builders.hpp"
#include "bohm/ensemble.hpp"
#include "bohm/propagator.hpp"
#include "bohm/sampling.hpp"

namespace bohm {

WaveField compose(const WaveField& system, const WaveField& apparatus) {
    const GridSpec& sg = system.grid;
    const GridSpec& ag = apparatus.grid;
    if (sg.dims() + ag.dims() > 3)
        throw ConfigError("compose", "composite would exceed 3 axes");
    if (sg.size() * ag.size() > kCompositePointBudget)
        throw ConfigError("compose", "composite grid exceeds memory budget");
    if (sg.hbar() != ag.hbar())
        throw ConfigError("compose", "hbar mismatch between factors");

    std::vector<AxisSpec> axes;
    std::vector<double> masses;
    for (int a = 0; a < sg.dims(); ++a) {
        axes.push_back(sg.axis(a));
        masses.push_back(sg.mass(a));
    }
    for (int a = 0; a < ag.dims(); ++a) {
        axes.push_back(ag.axis(a));
        masses.push_back(ag.mass(a));
    }
    const GridSpec grid = make_grid(axes, sg.hbar(), masses);

    WaveField out{grid, std::vector<Complex>(grid.size()), 0.0};
    const std::size_t na = ag.size();
    for (std::size_t i = 0; i < sg.size(); ++i)
        for (std::size_t j = 0; j < na; ++j)
            out.amplitudes[i * na + j] = system.amplitudes[i] * apparatus.amplitudes[j];
    return out;
}

namespace {

double boundary_fraction(const DensityField& d, int cells) {
    const GridSpec& g = d.grid;
    double peak = 0.0;
    for (double v : d.values) peak = std::max(peak, v);
    double worst = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        const auto idx = g.unflatten(i);
        bool near = false;
        for (int a = 0; a < g.dims(); ++a) {
            const int n = g.axis(a).n;
            if (idx[a] < cells || idx[a] >= n - cells) near = true;
        }
        if (near) worst = std::max(worst, d.values[i]);
    }
    return peak > 0 ? worst / peak : 0.0;
}

int checked_bin(const ExperimentSpec& spec, const std::array<double, 3>& q) {
    const int b = spec.result_function(q);
    if (b < 0 || b >= static_cast<int>(spec.bin_labels.size()))
        throw ConfigError("result_function", "bin index out of range");
    return b;
}

} // namespace

WaveField evolve_experiment(const ExperimentSpec& spec, const WaveField& psi) {
    if (!psi.grid.same_as(spec.system_grid))
        throw ConfigError("run_experiment", "system field on wrong grid");
    WaveField composite = compose(psi, spec.apparatus_ready);
    const PropagatorPlan plan(spec.composite_grid, spec.dt, spec.coupling);
    auto snaps = evolve(composite, plan, spec.duration, {spec.duration});
    return snaps.back();
}

ResultDistribution run_experiment(const ExperimentSpec& spec, const WaveField& psi) {
    const WaveField final_field = evolve_experiment(spec, psi);
    const DensityField d = density(final_field);
    if (boundary_fraction(d, 3) > 1e-6)
        throw ConfigError("run_experiment", "density leaked to the domain boundary");

    ResultDistribution r;
    r.bin_labels = spec.bin_labels;
    r.masses.assign(spec.bin_labels.size(), 0.0);
    r.method = "density-pushforward";
    const GridSpec& g = d.grid;
    std::array<double, 3> q{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        const auto idx = g.unflatten(i);
        for (int a = 0; a < g.dims(); ++a) q[a] = g.coord(a, idx[a]);
        r.masses[static_cast<std::size_t>(checked_bin(spec, q))] +=
            d.values[i] * g.cell_volume();
    }
    return r;
}

ResultDistribution sample_experiment(const ExperimentSpec& spec, const WaveField& psi,
                                     std::size_t n, std::uint64_t seed) {
    WaveField composite = compose(psi, spec.apparatus_ready);
    const PropagatorPlan plan(spec.composite_grid, spec.dt, spec.coupling);
    const FieldSequence fields = build_field_sequence(composite, plan, spec.duration, 10);
    const auto starts = sample_equilibrium(density(composite), n, seed);
    const auto ensemble = integrate_ensemble(starts, fields, {spec.duration},
                                             IntegrationOptions{spec.dt, true}, seed,
                                             "experiment");
    ResultDistribution r;
    r.bin_labels = spec.bin_labels;
    r.masses.assign(spec.bin_labels.size(), 0.0);
    r.method = "trajectory-sampled";
    r.sample_count = n;
    for (const auto& traj : ensemble.trajectories)
        r.masses[static_cast<std::size_t>(checked_bin(spec, traj.positions.back()))] +=
            1.0 / static_cast<double>(n);
    return r;
}

double verify_bilinearity(const ExperimentSpec& spec, const WaveField& psi1,
                          const WaveField& psi2, Complex alpha, Complex beta) {
    if (std::abs(norm(psi1) - 1.0) > 1e-9 || std::abs(norm(psi2) - 1.0) > 1e-9)
        throw ConfigError("verify_bilinearity", "inputs must be normalized");
    if (std::abs(inner_product(psi1, psi2)) > 1e-9)
        throw ConfigError("verify_bilinearity", "inputs must be orthogonal");
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw ConfigError("verify_bilinearity", "|alpha|^2 + |beta|^2 must be 1");

    auto mix = [&](Complex a, Complex b) {
        WaveField f = psi1;
        for (std::size_t i = 0; i < f.amplitudes.size(); ++i)
            f.amplitudes[i] = a * psi1.amplitudes[i] + b * psi2.amplitudes[i];
        return f;
    };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto mu = run_experiment(spec, mix(alpha, beta));
    const auto mu11 = run_experiment(spec, psi1);
    const auto mu22 = run_experiment(spec, psi2);
    const auto mu_p = run_experiment(spec, mix(inv_sqrt2, inv_sqrt2));
    const auto mu_m = run_experiment(spec, mix(inv_sqrt2, -inv_sqrt2));
    const auto mu_ip = run_experiment(spec, mix(inv_sqrt2, Complex(0, inv_sqrt2)));
    const auto mu_im = run_experiment(spec, mix(inv_sqrt2, Complex(0, -inv_sqrt2)));

    double dev = 0.0;
    for (std::size_t b = 0; b < mu.masses.size(); ++b) {
        const double re12 = 0.5 * (mu_p.masses[b] - mu_m.masses[b]);
        const double im12 = 0.5 * (mu_im.masses[b] - mu_ip.masses[b]);
        const Complex b12(re12, im12);
        const double predicted = std::norm(alpha) * mu11.masses[b] +
                                 std::norm(beta) * mu22.masses[b] +
                                 2.0 * std::real(std::conj(alpha) * beta * b12);
        dev = std::max(dev, std::abs(mu.masses[b] - predicted));
    }
    return dev;
}

SpectralComparison verify_spectral_measure(const ExperimentSpec& spec,
                                           const std::vector<std::vector<double>>& masks,
                                           const WaveField& psi) {
    const GridSpec& sg = spec.system_grid;
    if (masks.size() != spec.bin_labels.size())
        throw ConfigError("verify_spectral_measure", "one mask per bin required");
    for (std::size_t i = 0; i < sg.size(); ++i) {
        double s = 0.0;
        for (const auto& m : masks) s += m[i];
        if (std::abs(s - 1.0) > 1e-12)
            throw ConfigError("verify_spectral_measure",
                              "projector family not complete/disjoint");
    }
    SpectralComparison cmp;
    cmp.experiment = run_experiment(spec, psi);
    for (const auto& m : masks) {
        double mass = 0.0;
        for (std::size_t i = 0; i < sg.size(); ++i)
            mass += m[i] * std::norm(psi.amplitudes[i]);
        cmp.projector_masses.push_back(mass * sg.cell_volume());
    }
    for (std::size_t b = 0; b < masks.size(); ++b)
        cmp.max_abs_difference = std::max(
            cmp.max_abs_difference,
            std::abs(cmp.experiment.masses[b] - cmp.projector_masses[b]));
    return cmp;
}

std::vector<std::vector<std::vector<Complex>>> extract_povm(
    const ExperimentSpec& spec, const std::vector<WaveField>& basis) {
    const std::size_t d = basis.size();
    const std::size_t nbins = spec.bin_labels.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    std::vector<std::vector<std::vector<Complex>>> povm(
        nbins, std::vector<std::vector<Complex>>(d, std::vector<Complex>(d, 0.0)));

    std::vector<ResultDistribution> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = run_experiment(spec, basis[i]);
    for (std::size_t b = 0; b < nbins; ++b)
        for (std::size_t i = 0; i < d; ++i) povm[b][i][i] = diag[i].masses[b];

    auto mix = [&](std::size_t i, std::size_t j, Complex cj) {
        WaveField f = basis[i];
        for (std::size_t k = 0; k < f.amplitudes.size(); ++k)
            f.amplitudes[k] = inv_sqrt2 * (basis[i].amplitudes[k] +
                                           cj * basis[j].amplitudes[k]);
        return f;
    };
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const auto p = run_experiment(spec, mix(i, j, 1.0));
            const auto m = run_experiment(spec, mix(i, j, -1.0));
            const auto ip = run_experiment(spec, mix(i, j, Complex(0, 1)));
            const auto im = run_experiment(spec, mix(i, j, Complex(0, -1)));
            for (std::size_t b = 0; b < nbins; ++b) {
                const Complex oij(0.5 * (p.masses[b] - m.masses[b]),
                                  0.5 * (im.masses[b] - ip.masses[b]));
                povm[b][i][j] = oij;
                povm[b][j][i] = std::conj(oij);
            }
        }
    }
    return povm;
}

ExperimentSpec make_pointer_experiment(const PointerModelParams& p) {
    ExperimentSpec spec;
    spec.system_grid = make_grid({{-p.domain_half, p.domain_half, p.points}});
    spec.apparatus_grid = make_grid({{-p.domain_half, p.domain_half, p.points}});
    spec.composite_grid = make_grid({{-p.domain_half, p.domain_half, p.points},
                                     {-p.domain_half, p.domain_half, p.points}});
    spec.apparatus_ready = init_field(spec.apparatus_grid,
                                      [&](const std::array<double, 3>& q) {
                                          return builders::gaussian(q[0], 0.0,
                                                                    p.pointer_width);
                                      });
    // impulsive phase kick transfers momentum -dV/dy = g sgn(x) to the pointer
    const GridSpec& cg = spec.composite_grid;
    std::vector<double> kick(cg.size());
    for (std::size_t i = 0; i < cg.size(); ++i) {
        const auto idx = cg.unflatten(i);
        const double x = cg.coord(0, idx[0]);
        const double y = cg.coord(1, idx[1]);
        kick[i] = -p.kick_strength * (x >= 0 ? 1.0 : -1.0) * y;
    }
    spec.coupling = make_scheduled_potential(
        cg, {p.kick_duration, p.kick_duration + p.drift_time},
        {std::move(kick), std::vector<double>(cg.size(), 0.0)});
    spec.duration = p.kick_duration + p.drift_time;
    spec.dt = p.dt;
    spec.bin_labels = {"-", "+"};
    spec.result_function = [](const std::array<double, 3>& q) {
        return q[1] >= 0 ? 1 : 0;
    };
    return spec;
}

} // namespace bohm
