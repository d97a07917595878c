#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dwsim/dwsim.hpp"

namespace dwsim::test {

inline constexpr double kFs = 6000.0;
inline constexpr double kA0 = 100e3 * std::numbers::sqrt2;

/// figure_suite preset with explicit noise seeds.
inline ScenarioConfig figure_config(std::uint64_t nw_seed = 1, std::uint64_t np_seed = 2) {
    ScenarioConfig cfg = preset("figure_suite");
    cfg.nw_spec.seed = nw_seed;
    cfg.np_spec.seed = np_seed;
    return cfg;
}

/// Direct O(N) DFT power |X_k|^2 at one bin; independent of the FFT library.
inline double dft_power(std::span<const double> x, std::size_t k) {
    const double n = static_cast<double>(x.size());
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(k) *
                          static_cast<double>(i) / n;
        re += x[i] * std::cos(ph);
        im -= x[i] * std::sin(ph);
    }
    return re * re + im * im;
}

inline double excess_kurtosis(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = (v - m) * (v - m);
        m2 += d;
        m4 += d * d;
    }
    m2 /= static_cast<double>(x.size());
    m4 /= static_cast<double>(x.size());
    return m4 / (m2 * m2) - 3.0;
}

/// Point samples of a full-rate signal at the centres of the sensor's
/// averaging windows. An oracle for the envelope that does not go through
/// resample_to_reports.
inline std::vector<double> sample_at_window_centres(const SampledSignal& x,
                                                    const EnvelopeSeries& env, double tau) {
    std::vector<double> out;
    for (std::size_t j = 0; j < env.size(); ++j) {
        const double t = env.time_at(j) - tau / 2.0;
        const double pos = (t - x.t0_s()) * x.sample_rate_hz();
        const auto i = static_cast<std::size_t>(std::floor(pos));
        const double frac = pos - static_cast<double>(i);
        const double next = i + 1 < x.size() ? x[i + 1] : x[i];
        out.push_back(x[i] + frac * (next - x[i]));
    }
    return out;
}

inline SampledSignal sinusoid(double amplitude, double f, double phase, double duration,
                              double fs) {
    const auto n = static_cast<std::size_t>(std::llround(duration * fs));
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = amplitude * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs + phase);
    }
    return SampledSignal(std::move(v), fs);
}

}  // namespace dwsim::test
