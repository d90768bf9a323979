#ifndef BOHM_PROPAGATOR_HPP
#define BOHM_PROPAGATOR_HPP

#include <memory>
#include <vector>

#include "bohm/fft.hpp"
#include "bohm/wavefield.hpp"

namespace bohm {

/// Strang-split spectral stepper for i hbar dpsi/dt = H psi,
/// H = sum_a -(hbar^2/2 m_a) d^2/dq_a^2 + V(q).
/// One step is exp(-iV dt/2h) F^-1 exp(-iK dt/h) F exp(-iV dt/2h).
/// Time-dependent potentials are frozen at the step midpoint.
class PropagatorPlan {
public:
    PropagatorPlan(const GridSpec& grid, double dt, Potential potential);

    const GridSpec& grid() const { return grid_; }
    double dt() const { return dt_; }
    const Potential& potential() const { return potential_; }

    /// Advances f by one step in place of a copy; time_tag += dt.
    void step_inplace(WaveField& f) const;

    const std::vector<double>& kinetic_energies() const { return kinetic_energy_; }

private:
    const std::vector<Complex>& half_potential_phase(int frame) const;

    GridSpec grid_;
    double dt_;
    Potential potential_;
    std::vector<Complex> kinetic_phase_;
    std::vector<double> kinetic_energy_;
    mutable std::vector<std::vector<Complex>> pot_phase_cache_;
    std::shared_ptr<SpectralTransform> fft_;
};

WaveField step(const WaveField& f, const PropagatorPlan& plan);

/// Evolves to t_final, returning a snapshot at each requested time.
/// Snapshot times are rounded to the step lattice (a warning is logged
/// when rounding moves a time by more than 1e-12*dt).
std::vector<WaveField> evolve(const WaveField& f, const PropagatorPlan& plan,
                              double t_final, const std::vector<double>& snapshot_times);

/// Spectral Laplacian plus pointwise potential (static frame).
WaveField apply_hamiltonian(const WaveField& f, const Potential& v);

/// ||H f - E f|| / ||f||.
double eigen_residual(const WaveField& f, const Potential& v, double energy);

} // namespace bohm

#endif
