#include "bohm/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace bohm {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct SpectralTransform::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t size = 0;
};

SpectralTransform::SpectralTransform(const GridSpec& grid) : impl_(new Impl) {
    impl_->size = grid.size();
    impl_->buf = fftw_alloc_complex(impl_->size);
    int dims[3];
    for (int a = 0; a < grid.dims(); ++a) dims[a] = grid.axis(a).n;
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->fwd = fftw_plan_dft(grid.dims(), dims, impl_->buf, impl_->buf,
                               FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft(grid.dims(), dims, impl_->buf, impl_->buf,
                               FFTW_BACKWARD, FFTW_ESTIMATE);
}

SpectralTransform::~SpectralTransform() {
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(impl_->fwd);
        fftw_destroy_plan(impl_->bwd);
    }
    fftw_free(impl_->buf);
    delete impl_;
}

void SpectralTransform::forward(std::vector<std::complex<double>>& data) const {
    fftw_execute_dft(impl_->fwd,
                     reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

void SpectralTransform::inverse(std::vector<std::complex<double>>& data) const {
    fftw_execute_dft(impl_->bwd,
                     reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
    const double inv = 1.0 / static_cast<double>(impl_->size);
    for (auto& z : data) z *= inv;
}

} // namespace bohm
