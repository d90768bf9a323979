#ifndef BOHM_WAVEFIELD_HPP
#define BOHM_WAVEFIELD_HPP

#include <complex>
#include <functional>
#include <vector>

#include "bohm/grid.hpp"

namespace bohm {

using Complex = std::complex<double>;

/// Complex amplitudes on a grid, one per point, plus a simulated-time tag.
/// Immutable by convention after construction: operations return new fields.
struct WaveField {
    GridSpec grid;
    std::vector<Complex> amplitudes;
    double time_tag = 0.0;
};

/// Pointwise |psi|^2 on a grid.
struct DensityField {
    GridSpec grid;
    std::vector<double> values;
};

/// Real potential V(q) on a grid. An optional schedule of frames makes it
/// piecewise constant in time: frame i applies for t < until[i], the last
/// frame applies forever after.
struct Potential {
    GridSpec grid;
    std::vector<double> values;
    bool time_dependent = false;
    std::vector<double> frame_until;               // ascending, one per frame
    std::vector<std::vector<double>> frames;

    /// Index of the frame active at time t (0 when time-independent).
    int frame_at(double t) const;
    const std::vector<double>& values_at(double t) const;
};

Potential make_potential(const GridSpec& grid, std::vector<double> values);
Potential make_scheduled_potential(const GridSpec& grid,
                                   std::vector<double> frame_until,
                                   std::vector<std::vector<double>> frames);
Potential zero_potential(const GridSpec& grid);

/// Pointwise complex function of the configuration coordinates.
using FieldBuilder = std::function<Complex(const std::array<double, 3>&)>;

/// Samples the builder at grid points and normalizes. time_tag = 0.
/// Throws ConfigError on an all-zero sample.
WaveField init_field(const GridSpec& grid, const FieldBuilder& builder);

/// Same, without normalization.
WaveField sample_field(const GridSpec& grid, const FieldBuilder& builder);

double norm(const WaveField& f);
WaveField normalized(const WaveField& f);
WaveField scaled(const WaveField& f, Complex c);

/// Conjugate-linear in the first argument, cell-volume weighted.
Complex inner_product(const WaveField& a, const WaveField& b);

DensityField density(const WaveField& f);
double integral(const DensityField& d);

/// Integrates out all axes except `axis`. The result keeps cell-volume
/// weighting of the removed axes, so sum(values)*dx_axis equals the total.
std::vector<double> marginal(const DensityField& d, int axis);

} // namespace bohm

#endif
