#include "bohm/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/rng.hpp"

namespace bohm {

PiecewiseLinearCdf::PiecewiseLinearCdf(std::vector<double> node_values, double lo, double dx)
    : node_(std::move(node_values)), lo_(lo), dx_(dx) {
    node_.push_back(node_.front()); // periodic wrap
    cum_.resize(node_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < node_.size(); ++i)
        cum_[i + 1] = cum_[i] + 0.5 * dx_ * (node_[i] + node_[i + 1]);
}

double PiecewiseLinearCdf::operator()(double x) const {
    const std::size_t n = node_.size() - 1;
    double s = (x - lo_) / dx_;
    if (s <= 0.0) return 0.0;
    if (s >= static_cast<double>(n)) return 1.0;
    const std::size_t i = static_cast<std::size_t>(s);
    const double u = s - static_cast<double>(i);
    const double cell = dx_ * (node_[i] * u + 0.5 * (node_[i + 1] - node_[i]) * u * u);
    return (cum_[i] + cell) / cum_.back();
}

double PiecewiseLinearCdf::sample(double u) const {
    const std::size_t n = node_.size() - 1;
    const double target = u * cum_.back();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    std::size_t i = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    if (i >= n) i = n - 1;
    const double m = (target - cum_[i]) / dx_;
    const double a = node_[i];
    const double delta = node_[i + 1] - node_[i];
    double s;
    if (std::abs(delta) < 1e-300) {
        s = a > 0 ? m / a : 0.0;
    } else {
        const double disc = a * a + 2.0 * delta * m;
        s = (-a + std::sqrt(std::max(0.0, disc))) / delta;
    }
    s = std::clamp(s, 0.0, 1.0);
    return lo_ + (static_cast<double>(i) + s) * dx_;
}

std::vector<std::array<double, 3>> sample_equilibrium(const DensityField& d,
                                                      std::size_t n,
                                                      std::uint64_t seed) {
    if (n < 1) throw ConfigError("n", "sample count must be >= 1");
    const GridSpec& g = d.grid;
    double total = 0.0;
    for (double v : d.values) total += v;
    if (total <= 0.0) throw ConfigError("density", "zero-mass density");

    std::vector<std::array<double, 3>> out(n, {0.0, 0.0, 0.0});
    for (std::size_t s = 0; s < n; ++s) {
        CounterRng rng = CounterRng::for_stream(seed, s);
        // slab: density interpolated at the coordinates sampled so far,
        // living on the grid of the remaining axes
        std::vector<double> slab = d.values;
        std::size_t slab_size = g.size();
        for (int a = 0; a < g.dims(); ++a) {
            const std::size_t na = static_cast<std::size_t>(g.axis(a).n);
            const std::size_t rest = slab_size / na;
            std::vector<double> marg(na, 0.0);
            for (std::size_t j = 0; j < na; ++j)
                for (std::size_t r = 0; r < rest; ++r) marg[j] += slab[j * rest + r];
            PiecewiseLinearCdf cdf(std::move(marg), g.axis(a).lo, g.step(a));
            const double x = cdf.sample(rng.next_double());
            out[s][a] = x;
            if (a + 1 < g.dims()) {
                // collapse this axis by linear interpolation at x
                double frac = (x - g.axis(a).lo) / g.step(a);
                std::size_t i0 = static_cast<std::size_t>(frac);
                if (i0 >= na) i0 = na - 1;
                const double u = frac - static_cast<double>(i0);
                const std::size_t i1 = (i0 + 1) % na;
                std::vector<double> next(rest);
                for (std::size_t r = 0; r < rest; ++r)
                    next[r] = (1.0 - u) * slab[i0 * rest + r] + u * slab[i1 * rest + r];
                slab = std::move(next);
                slab_size = rest;
            }
        }
    }
    return out;
}

} // namespace bohm
