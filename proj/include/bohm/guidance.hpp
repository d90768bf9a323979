#ifndef BOHM_GUIDANCE_HPP
#define BOHM_GUIDANCE_HPP

#include <array>
#include <vector>

#include "bohm/wavefield.hpp"

namespace bohm {

/// Guidance velocity v_a = (hbar/m_a) Im(conj(psi) d_a psi)/|psi|^2 on the
/// grid, with node-flagged points filled from non-flagged neighbors.
struct VelocityField {
    GridSpec grid;
    std::vector<std::vector<double>> components; // [axis][flat index]
    std::vector<unsigned char> node_flag;        // 1 where |psi|^2 < eps_node
    std::size_t regularized_count = 0;
};

/// Fraction of peak density below which a point counts as a node.
inline constexpr double kNodeThresholdFraction = 1e-12;

VelocityField velocity_field(const WaveField& f);

/// Cubic (Catmull-Rom, per axis, periodic) interpolation of the stored
/// components. Exact at grid points.
std::array<double, 3> velocity_at(const VelocityField& v,
                                  const std::array<double, 3>& point);

/// Whether the interpolation stencil at `point` touches a node-flagged cell.
bool near_node(const VelocityField& v, const std::array<double, 3>& point);

/// Validation mode: evaluates psi and its gradient by the full Fourier sum
/// at an off-grid point and forms the guidance quotient directly.
/// Intended for grids of at most 64 points per axis.
std::array<double, 3> exact_velocity_at(const WaveField& f,
                                        const std::array<double, 3>& point);

} // namespace bohm

#endif
