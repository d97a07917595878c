#pragma once

#include <cstddef>

#include "dwsim/signal.hpp"

namespace dwsim {

/// Welch averaged periodogram with a periodic Hann window.
///
/// One-sided density scaled so that sum(psd) * df equals the window-weighted
/// mean square of the signal (Parseval). Segments start every
/// segment_len * (1 - overlap) samples; trailing samples that do not fill a
/// segment are ignored.
/// ParameterError when segment_len > len(x), segment_len < 2 or overlap is
/// outside [0, 1).
PsdEstimate psd_welch(const SampledSignal& x, std::size_t segment_len,
                      double overlap_fraction = 0.5);

/// Integral of the PSD over [f_lo, f_hi] by the trapezoid rule.
///
/// Band edges between grid points are linearly interpolated. The one-sided
/// spectrum is integrated as its even two-sided extension, so a band that
/// touches 0 Hz (or Nyquist) counts the full DC (Nyquist) bin; with that
/// rule the full band equals sum(psd) * df.
/// ParameterError when f_lo < 0, f_hi > max frequency or f_lo > f_hi.
double band_power(const PsdEstimate& p, double f_lo, double f_hi);

/// Total power, band_power over the whole grid.
double total_power(const PsdEstimate& p);

}  // namespace dwsim
