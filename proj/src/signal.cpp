#include "dwsim/signal.hpp"

#include <cmath>
#include <string>

#include "dwsim/error.hpp"

namespace dwsim {

SampledSignal::SampledSignal(std::vector<double> samples, double sample_rate_hz, double t0_s)
    : samples_(std::move(samples)), rate_(sample_rate_hz), t0_(t0_s) {
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
        throw ParameterError("sample rate must be positive and finite");
    }
    if (!std::isfinite(t0_)) {
        throw ParameterError("start time must be finite");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i])) {
            throw ParameterError("non-finite sample at index " + std::to_string(i));
        }
    }
}

SampledSignal SampledSignal::zeros(std::size_t count, double sample_rate_hz, double t0_s) {
    return SampledSignal(std::vector<double>(count, 0.0), sample_rate_hz, t0_s);
}

SampledSignal SampledSignal::tail(std::size_t count) const {
    if (count > samples_.size()) {
        throw ParameterError("tail longer than signal");
    }
    const std::size_t first = samples_.size() - count;
    return SampledSignal(std::vector<double>(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                                             samples_.end()),
                         rate_, time_at(first));
}

}  // namespace dwsim
