#ifndef BOHM_INTERP_HPP
#define BOHM_INTERP_HPP

#include <array>
#include <cmath>

namespace bohm {

/// Catmull-Rom weights for samples p[-1], p[0], p[1], p[2] at fraction u in [0,1).
/// w(0) = (0,1,0,0), so grid points reproduce exactly.
inline std::array<double, 4> catmull_rom_weights(double u) {
    const double u2 = u * u;
    const double u3 = u2 * u;
    return {-0.5 * u3 + u2 - 0.5 * u,
            1.5 * u3 - 2.5 * u2 + 1.0,
            -1.5 * u3 + 2.0 * u2 + 0.5 * u,
            0.5 * u3 - 0.5 * u2};
}

/// Splits a periodic coordinate into a base index and fraction on an n-point
/// axis with spacing dx starting at lo.
inline void periodic_locate(double x, double lo, double dx, int n,
                            int& base, double& frac) {
    double s = (x - lo) / dx;
    double f = std::floor(s);
    frac = s - f;
    long b = static_cast<long>(f) % n;
    if (b < 0) b += n;
    base = static_cast<int>(b);
    // snap to the lattice when rounding left us a hair off a grid point
    if (frac < 1e-12) {
        frac = 0.0;
    } else if (frac > 1.0 - 1e-12) {
        frac = 0.0;
        base = (base + 1) % n;
    }
}

} // namespace bohm

#endif
