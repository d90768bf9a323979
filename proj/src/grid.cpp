#include "bohm/grid.hpp"

#include <cmath>

namespace bohm {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

GridSpec::GridSpec(std::vector<AxisSpec> axes, double hbar, std::vector<double> masses)
    : axes_(std::move(axes)), hbar_(hbar), masses_(std::move(masses)) {
    size_ = 1;
    cell_volume_ = 1.0;
    for (int a = 0; a < dims(); ++a) {
        size_ *= static_cast<std::size_t>(axes_[a].n);
        cell_volume_ *= step(a);
    }
}

double GridSpec::wavenumber(int a, int j) const {
    const int n = axes_[a].n;
    const int js = j < n / 2 ? j : j - n;
    return 2.0 * M_PI * js / length(a);
}

std::size_t GridSpec::flat_index(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dims(); ++a)
        flat = flat * static_cast<std::size_t>(axes_[a].n) + static_cast<std::size_t>(idx[a]);
    return flat;
}

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dims() - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(axes_[a].n));
        flat /= static_cast<std::size_t>(axes_[a].n);
    }
    return idx;
}

double GridSpec::wrap(int a, double x) const {
    const double L = length(a);
    double r = std::fmod(x - axes_[a].lo, L);
    if (r < 0) r += L;
    return axes_[a].lo + r;
}

double GridSpec::max_kinetic_energy() const {
    double e = 0.0;
    for (int a = 0; a < dims(); ++a) {
        const double kmax = M_PI / step(a);
        e += hbar_ * hbar_ * kmax * kmax / (2.0 * masses_[a]);
    }
    return e;
}

double GridSpec::domain_diameter() const {
    double d2 = 0.0;
    for (int a = 0; a < dims(); ++a) d2 += length(a) * length(a);
    return std::sqrt(d2);
}

bool GridSpec::same_as(const GridSpec& other) const {
    if (dims() != other.dims() || hbar_ != other.hbar_) return false;
    for (int a = 0; a < dims(); ++a) {
        if (axes_[a].lo != other.axes_[a].lo || axes_[a].hi != other.axes_[a].hi ||
            axes_[a].n != other.axes_[a].n || masses_[a] != other.masses_[a])
            return false;
    }
    return true;
}

GridSpec make_grid(std::vector<AxisSpec> axes, double hbar, std::vector<double> masses) {
    if (axes.empty() || axes.size() > 3)
        throw ConfigError("axes", "grid must have 1 to 3 axes, got " +
                                      std::to_string(axes.size()));
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const std::string name = "axes[" + std::to_string(a) + "]";
        if (!is_power_of_two(axes[a].n) || axes[a].n < 16)
            throw ConfigError(name + ".n", std::to_string(axes[a].n) +
                                               " is not a power of two >= 16");
        if (!(axes[a].hi > axes[a].lo))
            throw ConfigError(name, "upper bound must exceed lower bound");
    }
    if (!(hbar > 0)) throw ConfigError("hbar", "must be positive");
    if (masses.empty()) masses.assign(axes.size(), 1.0);
    if (masses.size() != axes.size())
        throw ConfigError("masses", "need one mass per axis");
    for (std::size_t a = 0; a < masses.size(); ++a)
        if (!(masses[a] > 0))
            throw ConfigError("masses[" + std::to_string(a) + "]", "must be positive");
    return GridSpec(std::move(axes), hbar, std::move(masses));
}

} // namespace bohm
