#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace dwsim::detail {

namespace {
// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct RealFft::Plans {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
    real_ = fftw_alloc_real(n_);
    spec_ = fftw_alloc_complex(bins());
    if (real_ == nullptr || spec_ == nullptr) {
        fftw_free(real_);
        fftw_free(spec_);
        throw std::bad_alloc();
    }
    auto* spec = static_cast<fftw_complex*>(spec_);
    const int len = static_cast<int>(n_);
    std::lock_guard lock(planner_mutex());
    plans_->forward = fftw_plan_dft_r2c_1d(len, real_, spec, FFTW_ESTIMATE);
    plans_->inverse = fftw_plan_dft_c2r_1d(len, spec, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plans_->forward);
        fftw_destroy_plan(plans_->inverse);
    }
    fftw_free(real_);
    fftw_free(spec_);
}

std::span<std::complex<double>> RealFft::spectrum() noexcept {
    // fftw_complex is layout-compatible with std::complex<double>.
    return {reinterpret_cast<std::complex<double>*>(spec_), bins()};
}

void RealFft::forward() { fftw_execute(plans_->forward); }
void RealFft::inverse() { fftw_execute(plans_->inverse); }

}  // namespace dwsim::detail
