#include "dwsim/sensor.hpp"

#include <cmath>
#include <numbers>

#include "carrier.hpp"
#include "dwsim/error.hpp"
#include "dwsim/stats.hpp"

namespace dwsim {

SensorConfig SensorConfig::locked_to(double f_g_hz, double phi0_rad, double phase_error_rad) {
    SensorConfig cfg;
    cfg.carrier_freq_hz = f_g_hz;
    cfg.carrier_phase_rad = phi0_rad + phase_error_rad;
    cfg.avg_window_s = 1.0 / (2.0 * f_g_hz);
    cfg.report_rate_hz = 2.0 * f_g_hz;
    return cfg;
}

void SensorConfig::validate() const {
    if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_phase_rad)) {
        throw ParameterError("sensor carrier frequency must be positive, phase finite");
    }
    if (!(report_rate_hz > 0.0) || report_rate_hz > 2.0 * carrier_freq_hz * (1.0 + 1e-12)) {
        throw ParameterError("report rate must lie in (0, 2 * carrier frequency]");
    }
    if (filter_mode == FilterMode::BoxcarAverage) {
        const double tau = 1.0 / (2.0 * carrier_freq_hz);
        if (std::abs(avg_window_s - tau) > 1e-12 * tau) {
            throw ParameterError("boxcar averaging window must equal 1 / (2 * carrier frequency)");
        }
    } else if (lowpass_stop_hz < 0.0 || lowpass_stop_hz >= 2.0 * carrier_freq_hz) {
        throw ParameterError("lowpass stopband edge must lie in (0, 2 * carrier frequency)");
    }
}

EnvelopeSeries EnvelopeSeries::from_signal(const SampledSignal& s) {
    return EnvelopeSeries{s.values(), s.sample_rate_hz(), s.t0_s()};
}

bool EnvelopeSeries::well_formed() const noexcept {
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz) || !std::isfinite(t0_s)) return false;
    for (double v : values_v) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

SampledSignal synchronous_demodulate(const SampledSignal& line, const SensorConfig& cfg) {
    cfg.validate();
    const double fs = line.sample_rate_hz();
    if (fs < 10.0 * cfg.carrier_freq_hz) {
        throw ParameterError("line sample rate must be at least 10x the carrier frequency");
    }
    std::vector<double> out(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        out[i] = 2.0 * line[i] *
                 detail::carrier(cfg.carrier_freq_hz, cfg.carrier_phase_rad, line.t0_s(), i, fs);
    }
    return SampledSignal(std::move(out), fs, line.t0_s());
}

std::vector<double> design_lowpass(double fs, double pass_hz, double stop_hz,
                                   double attenuation_db) {
    if (!(0.0 < pass_hz && pass_hz < stop_hz && stop_hz < fs / 2.0)) {
        throw ParameterError("lowpass design needs 0 < pass < stop < fs / 2");
    }
    const double transition = 2.0 * std::numbers::pi * (stop_hz - pass_hz) / fs;
    auto taps = static_cast<std::size_t>(std::ceil((attenuation_db - 7.95) / (2.285 * transition))) + 1;
    if (taps % 2 == 0) ++taps;
    const double beta = attenuation_db > 50.0 ? 0.1102 * (attenuation_db - 8.7)
                                              : 0.5842 * std::pow(attenuation_db - 21.0, 0.4) +
                                                    0.07886 * (attenuation_db - 21.0);
    const double cutoff = 0.5 * (pass_hz + stop_hz) / fs;  // cycles per sample
    const double centre = static_cast<double>(taps - 1) / 2.0;
    const double i0_beta = std::cyl_bessel_i(0.0, beta);

    std::vector<double> h(taps);
    double sum = 0.0;
    for (std::size_t n = 0; n < taps; ++n) {
        const double m = static_cast<double>(n) - centre;
        const double x = 2.0 * std::numbers::pi * cutoff * m;
        const double sinc = m == 0.0 ? 2.0 * cutoff : std::sin(x) / (std::numbers::pi * m);
        const double r = m / centre;
        const double w = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
        h[n] = sinc * w;
        sum += h[n];
    }
    for (double& v : h) v /= sum;
    return h;
}

namespace {

double lowpass_stop(const SensorConfig& cfg) {
    return cfg.lowpass_stop_hz > 0.0 ? cfg.lowpass_stop_hz : 2.0 * cfg.carrier_freq_hz - 1.0;
}

// Reports k * decimation for k in [first, last]; each reads input [k*D - back, k*D + ahead).
EnvelopeSeries filter_to_reports(const SampledSignal& x, const SensorConfig& cfg) {
    cfg.validate();
    const double fs = x.sample_rate_hz();
    const std::size_t dec = integer_window(1.0 / cfg.report_rate_hz, fs);
    const auto in = x.samples();
    const std::size_t n = in.size();

    EnvelopeSeries env;
    env.rate_hz = cfg.report_rate_hz;

    if (cfg.filter_mode == FilterMode::BoxcarAverage) {
        const std::size_t len = integer_window(cfg.avg_window_s, fs);
        const std::size_t first = (len + dec - 1) / dec;
        const std::size_t last = n / dec;
        if (last < first) throw ParameterError("record shorter than one averaging window");
        env.values_v.reserve(last - first + 1);
        const double inv = 1.0 / static_cast<double>(len);
        for (std::size_t k = first; k <= last; ++k) {
            const std::size_t end = k * dec;
            double s = 0.0;
            for (std::size_t j = end - len; j < end; ++j) s += in[j];
            env.values_v.push_back(s * inv);
        }
        env.t0_s = x.t0_s() + static_cast<double>(first * dec) / fs;
        return env;
    }

    const double stop = lowpass_stop(cfg);
    const auto taps = design_lowpass(fs, stop / 2.0, stop);
    const std::size_t half = taps.size() / 2;
    if (n < taps.size()) throw ParameterError("record shorter than the lowpass kernel");
    const std::size_t first = (half + dec - 1) / dec;
    const std::size_t last = (n - 1 - half) / dec;
    if (last < first) throw ParameterError("record shorter than the lowpass kernel");
    env.values_v.reserve(last - first + 1);
    for (std::size_t k = first; k <= last; ++k) {
        const std::size_t start = k * dec - half;
        double s = 0.0;
        for (std::size_t j = 0; j < taps.size(); ++j) s += taps[j] * in[start + j];
        env.values_v.push_back(s);
    }
    env.t0_s = x.t0_s() + static_cast<double>(first * dec) / fs;
    return env;
}

}  // namespace

EnvelopeSeries extract_envelope(const SampledSignal& demod, const SensorConfig& cfg) {
    return filter_to_reports(demod, cfg);
}

EnvelopeSeries sensor_report(const EnvelopeSeries& env) {
    if (!env.well_formed()) throw ParameterError("malformed envelope series");
    return env;
}

SampledSignal resample_to_reports(const SampledSignal& x, const SensorConfig& cfg) {
    return filter_to_reports(x, cfg).as_signal();
}

}  // namespace dwsim
