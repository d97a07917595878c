#include "dwsim/grid.hpp"

#include <cmath>
#include <numbers>

#include "dwsim/error.hpp"
#include "dwsim/noise.hpp"
#include "dwsim/stats.hpp"
#include "carrier.hpp"

namespace dwsim {

using detail::carrier;

GridParams GridParams::from_rms(double a0_rms_v, double f_g_hz, double phi0_rad) {
    return GridParams{a0_rms_v * std::numbers::sqrt2, f_g_hz, phi0_rad};
}

double GridParams::a0_rms_v() const noexcept { return a0_peak_v / std::numbers::sqrt2; }

bool GridParams::validate(bool strict) const {
    if (!(a0_peak_v > 0.0) || !std::isfinite(a0_peak_v)) {
        throw ParameterError("a0 must be positive");
    }
    if (!(f_g_hz > 0.0) || !std::isfinite(f_g_hz) || !std::isfinite(phi0_rad)) {
        throw ParameterError("grid frequency and phase must be finite, frequency positive");
    }
    const bool in_band = f_g_hz >= kGridFrequencyMinHz && f_g_hz <= kGridFrequencyMaxHz;
    if (!in_band && strict) {
        throw ParameterError("grid frequency outside the allowed 59.7-60.3 Hz band");
    }
    return in_band;
}

namespace {

void check_chain_rate(const GridParams& g, double duration_s, double fs) {
    if (!(duration_s > 0.0)) throw ParameterError("duration must be positive");
    if (!(fs > 2.0 * g.f_g_hz)) throw ParameterError("sample rate below Nyquist for the grid");
}

}  // namespace

SampledSignal synth_line_voltage(const GridParams& g, double duration_s, double fs) {
    check_chain_rate(g, duration_s, fs);
    g.validate(false);
    const std::size_t n = sample_count(duration_s, fs);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.a0_peak_v * carrier(g.f_g_hz, g.phi0_rad, 0.0, i, fs);
    return SampledSignal(std::move(v), fs);
}

SampledSignal apply_watermark_modulation(const GridParams& g, const SampledSignal& n_w,
                                         const SampledSignal& n_p, double duration_s, double fs) {
    check_chain_rate(g, duration_s, fs);
    g.validate(false);
    const std::size_t n = sample_count(duration_s, fs);
    for (const SampledSignal* s : {&n_w, &n_p}) {
        if (s->size() != n || s->sample_rate_hz() != fs) {
            throw ParameterError("modulating noise must match the line length and sample rate");
        }
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = g.a0_peak_v * (1.0 + n_w[i] + n_p[i]) * carrier(g.f_g_hz, g.phi0_rad, 0.0, i, fs);
    }
    return SampledSignal(std::move(v), fs);
}

bool check_modulation_depth(const SampledSignal& n_w, const SampledSignal& n_p, double limit) {
    if (n_w.size() != n_p.size()) throw ParameterError("noise lengths differ");
    if (n_w.empty()) return true;
    double ms = 0.0;
    for (std::size_t i = 0; i < n_w.size(); ++i) {
        const double s = n_w[i] + n_p[i];
        ms += s * s;
    }
    ms /= static_cast<double>(n_w.size());
    return ms <= limit;
}

bool check_bandwidth_rule(const NoiseSpec& spec) {
    if (!(spec.bandwidth_hz > 0.0)) throw ParameterError("noise bandwidth must be positive");
    return spec.bandwidth_hz <= kMaxAdvisableBandwidthHz;
}

}  // namespace dwsim
