#pragma once

#include <vector>

#include "dwsim/signal.hpp"

namespace dwsim {

enum class FilterMode { BoxcarAverage, Lowpass };

struct SensorConfig {
    double carrier_freq_hz = 60.0;
    double carrier_phase_rad = 0.0;    // reference phase; grid phi0 plus any static error
    double avg_window_s = 1.0 / 120.0; // tau; must be 1 / (2 f) in boxcar mode
    double report_rate_hz = 120.0;
    FilterMode filter_mode = FilterMode::BoxcarAverage;
    double lowpass_stop_hz = 0.0;      // lowpass mode stopband edge; 0 means 2 f - 1 Hz

    /// Phase-locked sensor for a grid at `f_g_hz` / `phi0_rad`, offset by a static
    /// phase error.
    static SensorConfig locked_to(double f_g_hz, double phi0_rad, double phase_error_rad = 0.0);

    void validate() const;
};

/// Detected envelope E_wd / E_wdp in volts; also the sensor report S(t) on the wire.
struct EnvelopeSeries {
    std::vector<double> values_v;
    double rate_hz = 120.0;
    double t0_s = 0.0;

    std::size_t size() const noexcept { return values_v.size(); }
    double time_at(std::size_t i) const noexcept {
        return t0_s + static_cast<double>(i) / rate_hz;
    }

    SampledSignal as_signal() const { return SampledSignal(values_v, rate_hz, t0_s); }
    static EnvelopeSeries from_signal(const SampledSignal& s);

    /// Finite values, positive rate.
    bool well_formed() const noexcept;
};

/// 2 * line(t) * sin(2 pi f t + phase): DC a0 + baseband a0 N(t) + components at 2f.
/// The factor 2 is applied here so the averaged product is the envelope itself.
/// ParameterError when the line rate is below 10 * carrier frequency.
SampledSignal synchronous_demodulate(const SampledSignal& line, const SensorConfig& cfg);

/// Envelope at cfg.report_rate_hz from a demodulated product.
///
/// Boxcar mode: report k sits at t0 + k / rate and averages the product over
/// [t_k - tau, t_k). The k = 0 report has no history and is dropped, so the
/// series starts at t0 + 1 / rate and holds floor(duration * rate) values
/// (for tau <= 1 / rate).
///
/// Lowpass mode: zero-phase Kaiser FIR (>= 60 dB at lowpass_stop_hz), evaluated
/// at report instants whose full kernel lies inside the record.
///
/// ParameterError when fs / report_rate or fs * tau is not an integer.
EnvelopeSeries extract_envelope(const SampledSignal& demod, const SensorConfig& cfg);

/// The wire-bound sensor signal S(t); identical to the detected envelope.
EnvelopeSeries sensor_report(const EnvelopeSeries& env);

/// Resample a full-rate signal (e.g. the private watermark) onto the report
/// grid of extract_envelope with the same windows, so both series align
/// sample for sample.
SampledSignal resample_to_reports(const SampledSignal& x, const SensorConfig& cfg);

/// Linear-phase low-pass taps (odd length, unit DC gain) used by lowpass mode.
std::vector<double> design_lowpass(double fs, double pass_hz, double stop_hz,
                                   double attenuation_db = 65.0);

}  // namespace dwsim
