#include "dwsim/noise.hpp"

#include <cmath>

#include "dwsim/error.hpp"
#include "dwsim/rng.hpp"
#include "fft.hpp"

namespace dwsim {

std::size_t sample_count(double duration_s, double sample_rate_hz) {
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
        throw ParameterError("duration must be positive");
    }
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
        throw ParameterError("sample rate must be positive");
    }
    const double exact = duration_s * sample_rate_hz;
    const double rounded = std::round(exact);
    if (std::abs(exact - rounded) > 1e-6 || rounded < 1.0) {
        throw ParameterError("duration * sample rate is not a whole number of samples");
    }
    return static_cast<std::size_t>(rounded);
}

SampledSignal gen_bandlimited_gaussian(const NoiseSpec& spec, double duration_s,
                                       double sample_rate_hz) {
    const std::size_t n = sample_count(duration_s, sample_rate_hz);
    if (!(spec.rms >= 0.0) || !std::isfinite(spec.rms)) {
        throw ParameterError("noise rms must be non-negative");
    }
    if (!(spec.bandwidth_hz > 0.0) || !(spec.bandwidth_hz < sample_rate_hz / 2.0)) {
        throw ParameterError("noise bandwidth must lie in (0, Nyquist)");
    }
    if (spec.rms == 0.0) {
        return SampledSignal::zeros(n, sample_rate_hz);
    }

    const double df = sample_rate_hz / static_cast<double>(n);
    // Bins k = 1 .. k_max with k * df <= B; tolerance absorbs B sitting on a bin.
    const auto k_max = static_cast<std::size_t>(std::floor(spec.bandwidth_hz / df + 1e-9));
    if (k_max == 0) {
        throw ParameterError("record too short to resolve the noise bandwidth");
    }

    detail::RealFft fft(n);
    auto coeffs = fft.spectrum();
    std::fill(coeffs.begin(), coeffs.end(), std::complex<double>{});
    GaussianSource gauss(spec.seed);
    for (std::size_t k = 1; k <= k_max && k < fft.bins(); ++k) {
        const double re = gauss.next();
        const double im = gauss.next();
        coeffs[k] = {re, im};
    }
    fft.inverse();

    auto out = fft.real();
    double ms = 0.0;
    for (double v : out) ms += v * v;
    ms /= static_cast<double>(n);
    const double scale = spec.rms / std::sqrt(ms);
    std::vector<double> samples(out.begin(), out.end());
    for (double& v : samples) v *= scale;
    return SampledSignal(std::move(samples), sample_rate_hz);
}

}  // namespace dwsim
