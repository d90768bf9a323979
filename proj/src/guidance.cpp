#include "bohm/guidance.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/fft.hpp"
#include "bohm/interp.hpp"

namespace bohm {

VelocityField velocity_field(const WaveField& f) {
    const GridSpec& g = f.grid;
    const std::size_t n = g.size();

    double peak = 0.0;
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        rho[i] = std::norm(f.amplitudes[i]);
        peak = std::max(peak, rho[i]);
    }
    if (peak == 0.0) throw ConfigError("velocity_field", "zero field");
    const double eps = kNodeThresholdFraction * peak;

    VelocityField v{g, {}, std::vector<unsigned char>(n, 0), 0};
    v.components.assign(static_cast<std::size_t>(g.dims()), std::vector<double>(n, 0.0));

    SpectralTransform fft(g);
    std::vector<Complex> hat = f.amplitudes;
    fft.forward(hat);

    std::vector<Complex> grad(n);
    for (int a = 0; a < g.dims(); ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto idx = g.unflatten(i);
            grad[i] = hat[i] * Complex(0.0, g.wavenumber(a, idx[a]));
        }
        fft.inverse(grad);
        const double scale = g.hbar() / g.mass(a);
        auto& comp = v.components[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < n; ++i) {
            if (rho[i] < eps) {
                v.node_flag[i] = 1;
                comp[i] = 0.0;
            } else {
                comp[i] = scale *
                          std::imag(std::conj(f.amplitudes[i]) * grad[i]) / rho[i];
            }
        }
    }

    // fill node-flagged points by breadth-first dilation from the non-flagged
    // region, averaging over already-assigned neighbors
    std::vector<unsigned char> assigned(n);
    std::vector<std::size_t> queue;
    queue.reserve(n);
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < n; ++i) {
        assigned[i] = v.node_flag[i] ? 0 : 1;
        flagged += v.node_flag[i];
        if (assigned[i]) queue.push_back(i);
    }
    v.regularized_count = flagged;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto idx = g.unflatten(queue[head]);
        for (int a = 0; a < g.dims(); ++a) {
            const int na = g.axis(a).n;
            for (int dir = -1; dir <= 1; dir += 2) {
                auto nb = idx;
                nb[a] = (idx[a] + dir + na) % na;
                const std::size_t j = g.flat_index(nb);
                if (assigned[j]) continue;
                double wsum = 0.0;
                double acc[3] = {0.0, 0.0, 0.0};
                for (int b = 0; b < g.dims(); ++b) {
                    const int nb2 = g.axis(b).n;
                    for (int d2 = -1; d2 <= 1; d2 += 2) {
                        auto nn = nb;
                        nn[b] = (nb[b] + d2 + nb2) % nb2;
                        const std::size_t k = g.flat_index(nn);
                        if (!assigned[k]) continue;
                        wsum += 1.0;
                        for (int c = 0; c < g.dims(); ++c)
                            acc[c] += v.components[static_cast<std::size_t>(c)][k];
                    }
                }
                for (int c = 0; c < g.dims(); ++c)
                    v.components[static_cast<std::size_t>(c)][j] = acc[c] / wsum;
                assigned[j] = 1;
                queue.push_back(j);
            }
        }
    }
    return v;
}

namespace {

template <typename Fetch>
double interp_nd(const GridSpec& g, const std::array<double, 3>& point, Fetch&& fetch) {
    const int d = g.dims();
    int base[3];
    std::array<double, 4> w[3];
    for (int a = 0; a < d; ++a) {
        double frac;
        periodic_locate(point[a], g.axis(a).lo, g.step(a), g.axis(a).n, base[a], frac);
        w[a] = catmull_rom_weights(frac);
    }
    double out = 0.0;
    const int span = 4;
    int count = 1;
    for (int a = 0; a < d; ++a) count *= span;
    std::array<int, 3> idx{0, 0, 0};
    for (int s = 0; s < count; ++s) {
        int rem = s;
        double wt = 1.0;
        for (int a = 0; a < d; ++a) {
            const int off = rem % span - 1;
            rem /= span;
            const int na = g.axis(a).n;
            idx[a] = (base[a] + off + na) % na;
            wt *= w[a][static_cast<std::size_t>(off + 1)];
        }
        out += wt * fetch(g.flat_index(idx));
    }
    return out;
}

} // namespace

std::array<double, 3> velocity_at(const VelocityField& v,
                                  const std::array<double, 3>& point) {
    for (int a = 0; a < v.grid.dims(); ++a)
        if (!std::isfinite(point[a]))
            throw ConfigError("velocity_at", "non-finite coordinate");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (int a = 0; a < v.grid.dims(); ++a) {
        const auto& comp = v.components[static_cast<std::size_t>(a)];
        out[a] = interp_nd(v.grid, point, [&](std::size_t i) { return comp[i]; });
    }
    return out;
}

bool near_node(const VelocityField& v, const std::array<double, 3>& point) {
    bool hit = false;
    interp_nd(v.grid, point, [&](std::size_t i) {
        if (v.node_flag[i]) hit = true;
        return 0.0;
    });
    return hit;
}

std::array<double, 3> exact_velocity_at(const WaveField& f,
                                        const std::array<double, 3>& point) {
    const GridSpec& g = f.grid;
    SpectralTransform fft(g);
    std::vector<Complex> hat = f.amplitudes;
    fft.forward(hat);
    const double inv_n = 1.0 / static_cast<double>(g.size());

    Complex psi = 0.0;
    std::array<Complex, 3> dpsi{Complex(0), Complex(0), Complex(0)};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto idx = g.unflatten(i);
        double phase = 0.0;
        for (int a = 0; a < g.dims(); ++a)
            phase += g.wavenumber(a, idx[a]) * (point[a] - g.axis(a).lo);
        const Complex mode = hat[i] * std::polar(inv_n, phase);
        psi += mode;
        for (int a = 0; a < g.dims(); ++a)
            dpsi[a] += mode * Complex(0.0, g.wavenumber(a, idx[a]));
    }
    const double rho = std::norm(psi);
    std::array<double, 3> out{0.0, 0.0, 0.0};
    if (rho == 0.0) throw ConfigError("exact_velocity_at", "node at evaluation point");
    for (int a = 0; a < g.dims(); ++a)
        out[a] = g.hbar() / g.mass(a) * std::imag(std::conj(psi) * dpsi[a]) / rho;
    return out;
}

} // namespace bohm
