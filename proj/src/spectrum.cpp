#include "dwsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dwsim/error.hpp"
#include "fft.hpp"

namespace dwsim {

PsdEstimate psd_welch(const SampledSignal& x, std::size_t segment_len, double overlap_fraction) {
    if (segment_len < 2) throw ParameterError("psd_welch: segment length must be >= 2");
    if (segment_len > x.size()) throw ParameterError("psd_welch: segment longer than signal");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
        throw ParameterError("psd_welch: overlap must lie in [0, 1)");
    }

    const std::size_t n = segment_len;
    const double fs = x.sample_rate_hz();
    const auto step = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * (1.0 - overlap_fraction))));

    // Periodic Hann.
    std::vector<double> window(n);
    double window_power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(n));
        window_power += window[i] * window[i];
    }

    detail::RealFft fft(n);
    const std::size_t bins = fft.bins();
    std::vector<double> accum(bins, 0.0);
    std::size_t segments = 0;
    const auto in = x.samples();
    for (std::size_t start = 0; start + n <= in.size(); start += step) {
        auto buf = fft.real();
        for (std::size_t i = 0; i < n; ++i) buf[i] = in[start + i] * window[i];
        fft.forward();
        const auto spec = fft.spectrum();
        for (std::size_t k = 0; k < bins; ++k) accum[k] += std::norm(spec[k]);
        ++segments;
    }

    PsdEstimate out;
    out.resolution_hz = fs / static_cast<double>(n);
    out.freqs_hz.resize(bins);
    out.psd.resize(bins);
    const double scale = 1.0 / (fs * window_power * static_cast<double>(segments));
    const bool has_nyquist = n % 2 == 0;
    for (std::size_t k = 0; k < bins; ++k) {
        out.freqs_hz[k] = static_cast<double>(k) * out.resolution_hz;
        const bool single = k == 0 || (has_nyquist && k == bins - 1);
        out.psd[k] = accum[k] * scale * (single ? 1.0 : 2.0);
    }
    return out;
}

namespace {

double interpolate(const PsdEstimate& p, double f) {
    const double pos = f / p.resolution_hz;
    const auto last = p.psd.size() - 1;
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::floor(pos)), last);
    if (k == last) return p.psd[last];
    const double frac = pos - static_cast<double>(k);
    return p.psd[k] + frac * (p.psd[k + 1] - p.psd[k]);
}

}  // namespace

double band_power(const PsdEstimate& p, double f_lo, double f_hi) {
    if (p.psd.size() < 2 || !(p.resolution_hz > 0.0)) {
        throw ParameterError("band_power: empty PSD");
    }
    const double f_max = p.max_frequency_hz();
    const double slack = 1e-9 * p.resolution_hz;
    if (!(f_lo >= 0.0) || !(f_hi <= f_max + slack) || f_lo > f_hi) {
        throw ParameterError("band_power: band outside [0, max frequency] or inverted");
    }
    f_hi = std::min(f_hi, f_max);
    if (f_lo == f_hi) return 0.0;

    const double df = p.resolution_hz;
    // Grid points strictly inside (f_lo, f_hi).
    const auto first = static_cast<std::size_t>(std::floor(f_lo / df + 1e-9)) + 1;
    const auto last_inside = static_cast<std::size_t>(std::ceil(f_hi / df - 1e-9));

    double area = 0.0;
    double prev_f = f_lo;
    double prev_v = interpolate(p, f_lo);
    for (std::size_t k = first; k < last_inside && k < p.psd.size(); ++k) {
        const double f = static_cast<double>(k) * df;
        area += 0.5 * (prev_v + p.psd[k]) * (f - prev_f);
        prev_f = f;
        prev_v = p.psd[k];
    }
    area += 0.5 * (prev_v + interpolate(p, f_hi)) * (f_hi - prev_f);

    // End bins of the one-sided grid stand for a full cell of the two-sided spectrum.
    if (f_lo <= slack) area += 0.5 * df * p.psd.front();
    if (f_hi >= f_max - slack) area += 0.5 * df * p.psd.back();
    return area;
}

double total_power(const PsdEstimate& p) { return band_power(p, 0.0, p.max_frequency_hz()); }

}  // namespace dwsim
