#include "bohm/wavefield.hpp"

#include <algorithm>
#include <cmath>

namespace bohm {

int Potential::frame_at(double t) const {
    if (!time_dependent) return 0;
    for (std::size_t i = 0; i < frame_until.size(); ++i)
        if (t < frame_until[i]) return static_cast<int>(i);
    return static_cast<int>(frames.size()) - 1;
}

const std::vector<double>& Potential::values_at(double t) const {
    if (!time_dependent) return values;
    return frames[static_cast<std::size_t>(frame_at(t))];
}

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw ConfigError(what, "non-finite value");
}

} // namespace

Potential make_potential(const GridSpec& grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw ConfigError("potential", "value count does not match grid size");
    check_finite(values, "potential");
    return Potential{grid, std::move(values), false, {}, {}};
}

Potential make_scheduled_potential(const GridSpec& grid,
                                   std::vector<double> frame_until,
                                   std::vector<std::vector<double>> frames) {
    if (frames.empty() || frame_until.size() != frames.size())
        throw ConfigError("potential.schedule", "need one until-time per frame");
    for (auto& f : frames) {
        if (f.size() != grid.size())
            throw ConfigError("potential.schedule", "frame size does not match grid");
        check_finite(f, "potential.schedule");
    }
    Potential p{grid, frames.front(), true, std::move(frame_until), std::move(frames)};
    return p;
}

Potential zero_potential(const GridSpec& grid) {
    return Potential{grid, std::vector<double>(grid.size(), 0.0), false, {}, {}};
}

WaveField sample_field(const GridSpec& grid, const FieldBuilder& builder) {
    WaveField f{grid, std::vector<Complex>(grid.size()), 0.0};
    std::array<int, 3> idx{0, 0, 0};
    std::array<double, 3> q{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int a = 0; a < grid.dims(); ++a) q[a] = grid.coord(a, idx[a]);
        const Complex v = builder(q);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConfigError("builder", "non-finite amplitude at a grid point");
        f.amplitudes[i] = v;
        // row-major increment
        for (int a = grid.dims() - 1; a >= 0; --a) {
            if (++idx[a] < grid.axis(a).n) break;
            idx[a] = 0;
        }
    }
    return f;
}

WaveField init_field(const GridSpec& grid, const FieldBuilder& builder) {
    WaveField f = sample_field(grid, builder);
    const double n = norm(f);
    if (n == 0.0) throw ConfigError("builder", "degenerate state: all samples zero");
    const double inv = 1.0 / n;
    for (auto& a : f.amplitudes) a *= inv;
    return f;
}

double norm(const WaveField& f) {
    double s = 0.0;
    for (const auto& a : f.amplitudes) s += std::norm(a);
    return std::sqrt(s * f.grid.cell_volume());
}

WaveField normalized(const WaveField& f) {
    const double n = norm(f);
    if (n == 0.0) throw ConfigError("field", "cannot normalize a zero field");
    return scaled(f, Complex(1.0 / n, 0.0));
}

WaveField scaled(const WaveField& f, Complex c) {
    WaveField g = f;
    for (auto& a : g.amplitudes) a *= c;
    return g;
}

Complex inner_product(const WaveField& a, const WaveField& b) {
    if (!a.grid.same_as(b.grid))
        throw ConfigError("inner_product", "grid mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return s * a.grid.cell_volume();
}

DensityField density(const WaveField& f) {
    DensityField d{f.grid, std::vector<double>(f.amplitudes.size())};
    for (std::size_t i = 0; i < f.amplitudes.size(); ++i)
        d.values[i] = std::norm(f.amplitudes[i]);
    return d;
}

double integral(const DensityField& d) {
    double s = 0.0;
    for (double v : d.values) s += v;
    return s * d.grid.cell_volume();
}

std::vector<double> marginal(const DensityField& d, int axis) {
    const GridSpec& g = d.grid;
    if (axis < 0 || axis >= g.dims())
        throw ConfigError("marginal.axis", "axis out of range");
    const int n = g.axis(axis).n;
    std::vector<double> m(static_cast<std::size_t>(n), 0.0);
    const double w = g.cell_volume() / g.step(axis);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        const auto idx = g.unflatten(i);
        m[static_cast<std::size_t>(idx[axis])] += d.values[i] * w;
    }
    return m;
}

} // namespace bohm
