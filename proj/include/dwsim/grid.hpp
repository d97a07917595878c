#pragma once

#include "dwsim/signal.hpp"

namespace dwsim {

/// Allowed grid operating band (US interconnection).
inline constexpr double kGridFrequencyMinHz = 59.7;
inline constexpr double kGridFrequencyMaxHz = 60.3;
/// Advisable watermark bandwidth ceiling, set by generator control time constants.
inline constexpr double kMaxAdvisableBandwidthHz = 0.3;
/// Default bound on the mean-square modulation depth <(N_w + N_p)^2>.
inline constexpr double kDefaultModulationDepthLimit = 0.01;

struct GridParams {
    double a0_peak_v = 0.0;  // nominal envelope a0, peak volts
    double f_g_hz = 60.0;
    double phi0_rad = 0.0;

    /// The only place where rms volts are converted to peak volts.
    static GridParams from_rms(double a0_rms_v, double f_g_hz = 60.0, double phi0_rad = 0.0);

    double a0_rms_v() const noexcept;

    /// Throws ParameterError for a0 <= 0 or non-finite values. A frequency outside
    /// [59.7, 60.3] Hz throws when `strict`, otherwise returns false (warning).
    bool validate(bool strict) const;
};

/// Clean line voltage a0 sin(2 pi f_g t + phi0).
/// ParameterError when duration_s <= 0 or fs <= 2 f_g.
SampledSignal synth_line_voltage(const GridParams& g, double duration_s, double fs);

/// Watermarked line voltage a0 [1 + n_w(t) + n_p(t)] sin(2 pi f_g t + phi0).
/// Both noises must have exactly duration_s * fs samples at rate fs; pass
/// SampledSignal::zeros for an absent term.
SampledSignal apply_watermark_modulation(const GridParams& g, const SampledSignal& n_w,
                                         const SampledSignal& n_p, double duration_s, double fs);

/// True iff the mean square of (n_w + n_p) is at most `limit`.
bool check_modulation_depth(const SampledSignal& n_w, const SampledSignal& n_p,
                            double limit = kDefaultModulationDepthLimit);

/// True iff the watermark bandwidth stays at or below 0.3 Hz.
/// ParameterError when the noise bandwidth is not positive.
bool check_bandwidth_rule(const NoiseSpec& spec);

}  // namespace dwsim
