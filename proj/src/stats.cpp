#include "dwsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwsim/error.hpp"

namespace dwsim {

double mean(std::span<const double> x) {
    if (x.empty()) throw ParameterError("mean of empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double mean_square(std::span<const double> x) {
    if (x.empty()) throw ParameterError("mean square of empty series");
    double s = 0.0;
    for (double v : x) s += v * v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

double rms(const SampledSignal& x) {
    if (x.empty()) throw ParameterError("rms of empty signal");
    return std::sqrt(mean_square(x.samples()));
}

double pearson_corr(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ParameterError("pearson_corr: length mismatch");
    if (x.size() < 2) throw ParameterError("pearson_corr: need at least two samples");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateInputError("pearson_corr: zero-variance input");
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double pearson_corr(const SampledSignal& x, const SampledSignal& y) {
    if (x.sample_rate_hz() != y.sample_rate_hz()) {
        throw ParameterError("pearson_corr: sample rate mismatch");
    }
    return pearson_corr(x.samples(), y.samples());
}

std::size_t integer_window(double window_s, double rate_hz, std::size_t min_count) {
    const double exact = window_s * rate_hz;
    const double rounded = std::round(exact);
    if (!(window_s > 0.0) || std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
        throw ParameterError("window is not an integer number of samples");
    }
    if (rounded < static_cast<double>(min_count)) {
        throw ParameterError("window shorter than " + std::to_string(min_count) + " samples");
    }
    return static_cast<std::size_t>(rounded);
}

SampledSignal moving_average(const SampledSignal& x, double window_s) {
    const std::size_t len = integer_window(window_s, x.sample_rate_hz(), 2);
    if (len > x.size()) throw ParameterError("moving_average: window longer than signal");

    const auto in = x.samples();
    const std::size_t count = in.size() - len + 1;
    std::vector<double> out(count);
    const double inv = 1.0 / static_cast<double>(len);
    // Direct sums: no drift along the record, exact for constant input up to rounding.
    for (std::size_t m = 0; m < count; ++m) {
        double s = 0.0;
        for (std::size_t j = 0; j < len; ++j) s += in[m + j];
        out[m] = s * inv;
    }
    return SampledSignal(std::move(out), x.sample_rate_hz(),
                         x.t0_s() + static_cast<double>(len) / x.sample_rate_hz());
}

}  // namespace dwsim
