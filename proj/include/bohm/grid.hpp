#ifndef BOHM_GRID_HPP
#define BOHM_GRID_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bohm {

/// Error thrown when a grid or scenario parameter violates its contract.
/// Carries the name of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
};

/// Rectangular periodic configuration-space grid, 1 to 3 axes.
/// Points on axis a sit at lo + j*dx, j = 0..n-1, dx = (hi-lo)/n;
/// the point at hi is identified with the one at lo.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(std::vector<AxisSpec> axes, double hbar, std::vector<double> masses);

    int dims() const { return static_cast<int>(axes_.size()); }
    const AxisSpec& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
    double step(int a) const { return (axes_[a].hi - axes_[a].lo) / axes_[a].n; }
    double length(int a) const { return axes_[a].hi - axes_[a].lo; }
    double hbar() const { return hbar_; }
    double mass(int a) const { return masses_[static_cast<std::size_t>(a)]; }
    const std::vector<double>& masses() const { return masses_; }

    std::size_t size() const { return size_; }
    double cell_volume() const { return cell_volume_; }

    /// Angular wavenumber of Fourier index j on axis a, j in [0, n),
    /// mapped to the symmetric range [-n/2, n/2).
    double wavenumber(int a, int j) const;

    /// Coordinate of grid index j on axis a.
    double coord(int a, int j) const { return axes_[a].lo + j * step(a); }

    /// Row-major flattening of per-axis indices.
    std::size_t flat_index(const std::array<int, 3>& idx) const;
    std::array<int, 3> unflatten(std::size_t flat) const;

    /// Wrap a coordinate into [lo, hi) on axis a.
    double wrap(int a, double x) const;

    /// Largest kinetic eigenvalue representable on the grid,
    /// sum over axes of hbar^2 k_max^2 / (2 m).
    double max_kinetic_energy() const;

    double domain_diameter() const;

    bool same_as(const GridSpec& other) const;

private:
    std::vector<AxisSpec> axes_;
    double hbar_ = 1.0;
    std::vector<double> masses_;
    std::size_t size_ = 0;
    double cell_volume_ = 1.0;
};

/// Validates and builds a grid. masses empty means all 1.
GridSpec make_grid(std::vector<AxisSpec> axes, double hbar = 1.0,
                   std::vector<double> masses = {});

} // namespace bohm

#endif
