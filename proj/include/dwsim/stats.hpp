#pragma once

#include <span>

#include "dwsim/signal.hpp"

namespace dwsim {

double mean(std::span<const double> x);
double mean_square(std::span<const double> x);
double variance(std::span<const double> x);  // population variance

/// sqrt(mean of squares). Throws ParameterError on an empty signal.
double rms(const SampledSignal& x);

/// Zero-lag Pearson correlation coefficient.
/// ParameterError on length or rate mismatch, DegenerateInputError when
/// either input has zero variance.
double pearson_corr(const SampledSignal& x, const SampledSignal& y);
double pearson_corr(std::span<const double> x, std::span<const double> y);

/// Causal boxcar average of width `window_s`.
///
/// Output sample m is the mean of input samples [m, m + L) with
/// L = window_s * rate, timestamped at the window end, so the first output
/// sits at t0 + window_s. The window must hold an integer number of samples
/// (L >= 2); otherwise ParameterError.
SampledSignal moving_average(const SampledSignal& x, double window_s);

/// Window length in samples for `window_s` at `rate_hz`, or ParameterError when
/// it is not an integer count of at least `min_count`.
std::size_t integer_window(double window_s, double rate_hz, std::size_t min_count = 1);

}  // namespace dwsim
