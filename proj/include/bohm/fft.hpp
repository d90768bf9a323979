#ifndef BOHM_FFT_HPP
#define BOHM_FFT_HPP

#include <complex>
#include <vector>

#include "bohm/grid.hpp"

namespace bohm {

/// In-place complex FFT over the full grid (rank = grid dims).
/// Forward uses the e^{-ikx} convention; inverse carries the 1/N factor.
/// Plan creation is serialized internally; execution on the owned buffer
/// must not be shared across threads — make one transform per worker.
class SpectralTransform {
public:
    explicit SpectralTransform(const GridSpec& grid);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    void forward(std::vector<std::complex<double>>& data) const;
    void inverse(std::vector<std::complex<double>>& data) const;

private:
    struct Impl;
    Impl* impl_;
};

} // namespace bohm

#endif
