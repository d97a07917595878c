#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dwsim {

/// Uniformly sampled real-valued series. Sample i sits at t0 + i / rate.
///
/// Construction rejects a non-positive rate and non-finite samples, so every
/// SampledSignal in flight is valid. Values are immutable once built.
class SampledSignal {
public:
    SampledSignal(std::vector<double> samples, double sample_rate_hz, double t0_s = 0.0);

    /// All-zero signal of `count` samples.
    static SampledSignal zeros(std::size_t count, double sample_rate_hz, double t0_s = 0.0);

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    double sample_rate_hz() const noexcept { return rate_; }
    double t0_s() const noexcept { return t0_; }

    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double duration_s() const noexcept { return static_cast<double>(samples_.size()) / rate_; }
    double time_at(std::size_t i) const noexcept { return t0_ + static_cast<double>(i) / rate_; }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

    /// Last `count` samples, timestamps preserved.
    SampledSignal tail(std::size_t count) const;

private:
    std::vector<double> samples_;
    double rate_;
    double t0_;
};

/// Band-limited Gaussian process description (watermark or parasitic noise).
struct NoiseSpec {
    double rms = 0.0;           // dimensionless modulation depth
    double bandwidth_hz = 1.0;  // flat spectrum on (0, bandwidth_hz]
    std::uint64_t seed = 0;
};

/// One-sided power spectral density on a uniform frequency grid starting at 0 Hz.
struct PsdEstimate {
    std::vector<double> freqs_hz;
    std::vector<double> psd;  // power per Hz
    double resolution_hz = 0.0;

    double max_frequency_hz() const noexcept { return freqs_hz.empty() ? 0.0 : freqs_hz.back(); }
};

}  // namespace dwsim
