#ifndef BOHM_MEASUREMENT_HPP
#define BOHM_MEASUREMENT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bohm/wavefield.hpp"

namespace bohm {

/// Result function F: composite configuration -> bin index.
using ResultFunction = std::function<int(const std::array<double, 3>&)>;

/// A complete experiment: apparatus ready state, coupling schedule,
/// duration, and the result map on the final configuration.
struct ExperimentSpec {
    GridSpec system_grid;
    GridSpec apparatus_grid;
    GridSpec composite_grid;
    WaveField apparatus_ready;  // Phi_0, normalized
    Potential coupling;         // on the composite grid, may be scheduled
    double duration = 1.0;
    double dt = 1e-3;
    ResultFunction result_function;
    std::vector<std::string> bin_labels;
};

struct ResultDistribution {
    std::vector<std::string> bin_labels;
    std::vector<double> masses;
    std::string method;  // "density-pushforward" or "trajectory-sampled"
    std::size_t sample_count = 0;
};

/// Largest composite size accepted by compose().
inline constexpr std::size_t kCompositePointBudget = std::size_t(1) << 22;

/// Tensor product on the product grid (system axes first). Norm 1 for
/// normalized inputs.
WaveField compose(const WaveField& system, const WaveField& apparatus);

/// Final composite field e^{-iHT} (psi x Phi_0) under the coupling schedule.
WaveField evolve_experiment(const ExperimentSpec& spec, const WaveField& psi);

/// psi -> Psi -> Psi_T -> |Psi_T|^2 dq -> pushforward through F.
/// Throws when more than 1e-6 of the peak density sits within 3 cells of
/// the domain boundary.
ResultDistribution run_experiment(const ExperimentSpec& spec, const WaveField& psi);

/// Cross-check: n equilibrium trajectories of the composite, binned by
/// Z = F(Q_T).
ResultDistribution sample_experiment(const ExperimentSpec& spec, const WaveField& psi,
                                     std::size_t n, std::uint64_t seed);

/// Max per-bin deviation between mu_Z for alpha psi1 + beta psi2 and the
/// sesquilinear expansion with cross terms obtained by polarization.
/// Requires orthonormal psi1, psi2 and |alpha|^2 + |beta|^2 = 1.
double verify_bilinearity(const ExperimentSpec& spec, const WaveField& psi1,
                          const WaveField& psi2, Complex alpha, Complex beta);

struct SpectralComparison {
    ResultDistribution experiment;
    std::vector<double> projector_masses;  // ||P_z psi||^2 per bin
    double max_abs_difference = 0.0;
};

/// Projector family given as per-bin 0/1 masks over the system grid,
/// required to be disjoint and complete.
SpectralComparison verify_spectral_measure(const ExperimentSpec& spec,
                                           const std::vector<std::vector<double>>& masks,
                                           const WaveField& psi);

/// Per-bin POVM matrix elements <b_i, O(bin) b_j> probed with a finite
/// orthonormal basis via polarization. Small grids only: costs
/// O(basis^2 * bins) composite evolutions.
std::vector<std::vector<std::vector<Complex>>> extract_povm(
    const ExperimentSpec& spec, const std::vector<WaveField>& basis);

/// Canonical pointer model: impulsive V = -g sgn(x) y kick for t < tau,
/// free drift afterwards; F = sign of the pointer coordinate.
/// Bins are {"-", "+"}.
struct PointerModelParams {
    double domain_half = 16.0;
    int points = 256;
    double pointer_width = 0.5;
    double kick_strength = 120.0;
    double kick_duration = 0.05;
    double drift_time = 1.0;
    double dt = 2e-3;
};
ExperimentSpec make_pointer_experiment(const PointerModelParams& p = {});

} // namespace bohm

#endif
