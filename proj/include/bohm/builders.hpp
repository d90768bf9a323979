#ifndef BOHM_BUILDERS_HPP
#define BOHM_BUILDERS_HPP

#include <cmath>
#include <complex>

namespace bohm::builders {

/// Gaussian packet with |psi|^2 standard deviation `width`, carrying
/// momentum hbar*k: exp(-(x-c)^2 / (4 width^2)) e^{ikx}.
inline std::complex<double> gaussian(double x, double center, double width,
                                     double k = 0.0) {
    const double d = x - center;
    return std::polar(std::exp(-d * d / (4.0 * width * width)), k * x);
}

inline std::complex<double> plane_wave(double x, double k) {
    return std::polar(1.0, k * x);
}

/// Two displaced Gaussians at +-separation, equal weights.
inline std::complex<double> double_gaussian(double x, double separation,
                                            double width) {
    return gaussian(x, separation, width) + gaussian(x, -separation, width);
}

/// Analytic free-Gaussian density width at time t (hbar = m = 1):
/// sigma(t) = sigma0 sqrt(1 + (t / (2 sigma0^2))^2).
inline double free_gaussian_width(double sigma0, double t) {
    const double r = t / (2.0 * sigma0 * sigma0);
    return sigma0 * std::sqrt(1.0 + r * r);
}

} // namespace bohm::builders

#endif
