#ifndef BOHM_SAMPLING_HPP
#define BOHM_SAMPLING_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "bohm/wavefield.hpp"

namespace bohm {

/// I.i.d. samples from the periodic piecewise-multilinear interpolant of the
/// density, drawn axis by axis: marginal first, then conditionals given the
/// already-sampled (real-valued) coordinates. Deterministic given the seed;
/// sample i consumes only stream (seed, i).
std::vector<std::array<double, 3>> sample_equilibrium(const DensityField& d,
                                                      std::size_t n,
                                                      std::uint64_t seed);

/// CDF of a periodic piecewise-linear 1D density given its grid values;
/// used for inverse-CDF sampling and as the KS reference.
class PiecewiseLinearCdf {
public:
    PiecewiseLinearCdf(std::vector<double> node_values, double lo, double dx);

    double total_mass() const { return cum_.back(); }
    /// CDF value at x (x in [lo, lo + n*dx]), normalized to [0,1].
    double operator()(double x) const;
    /// Inverse CDF of u in [0,1).
    double sample(double u) const;

private:
    std::vector<double> node_;  // n+1 values, periodic wrap appended
    std::vector<double> cum_;   // n+1 cumulative cell masses, cum_[0]=0
    double lo_;
    double dx_;
};

} // namespace bohm

#endif
