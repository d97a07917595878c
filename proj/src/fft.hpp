#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace dwsim::detail {

/// Real <-> half-complex transforms of a fixed length on FFTW-owned buffers.
/// Unnormalized in both directions (FFTW convention).
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::size_t size() const noexcept { return n_; }
    std::size_t bins() const noexcept { return n_ / 2 + 1; }

    std::span<double> real() noexcept { return {real_, n_}; }
    std::span<std::complex<double>> spectrum() noexcept;

    void forward();  // real() -> spectrum()
    void inverse();  // spectrum() -> real(); destroys spectrum()

private:
    struct Plans;
    std::size_t n_;
    double* real_;
    void* spec_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace dwsim::detail
