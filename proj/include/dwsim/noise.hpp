#pragma once

#include "dwsim/signal.hpp"

namespace dwsim {

/// Zero-mean band-limited Gaussian noise.
///
/// Built in the frequency domain: independent complex Gaussian coefficients on
/// every DFT bin in (0, bandwidth], zero elsewhere, inverse real FFT, then the
/// realization is rescaled so its sample rms equals `spec.rms` exactly. The
/// output is therefore strictly band-limited (on the record's DFT grid) and
/// has exactly zero mean. Same spec, duration and rate give bit-identical
/// output.
///
/// Throws ParameterError when duration_s <= 0, sample_rate_hz <= 0,
/// bandwidth is not inside (0, Nyquist), rms < 0, or the record is too short
/// to hold a single bin below the bandwidth.
SampledSignal gen_bandlimited_gaussian(const NoiseSpec& spec, double duration_s,
                                       double sample_rate_hz);

/// Number of samples used for a record of `duration_s` at `sample_rate_hz`
/// (rounded to nearest; throws if the product is not within 1e-6 of an integer).
std::size_t sample_count(double duration_s, double sample_rate_hz);

}  // namespace dwsim
