#include "dwsim/attacker.hpp"

#include <cmath>

#include "dwsim/error.hpp"
#include "dwsim/noise.hpp"
#include "dwsim/stats.hpp"

namespace dwsim {

void AttackParams::validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0) || !std::isfinite(alpha) ||
        !std::isfinite(beta) || !std::isfinite(gamma)) {
        throw ParameterError("attack scaling factors must be finite and non-negative");
    }
}

SampledSignal extract_noise(const EnvelopeSeries& s, double a0_nominal) {
    if (!(a0_nominal > 0.0)) throw ParameterError("nominal a0 must be positive");
    std::vector<double> out(s.values_v.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.values_v[i] - a0_nominal;
    return SampledSignal(std::move(out), s.rate_hz, s.t0_s);
}

SampledSignal extract_noise_mean_referenced(const EnvelopeSeries& s) {
    const double level = mean(s.values_v);
    if (!(level > 0.0)) throw DegenerateInputError("stream mean is not positive");
    return extract_noise(s, level);
}

EnvelopeSeries synthesize_fake(const SampledSignal& extracted, const AttackParams& p,
                               double a0_nominal) {
    p.validate();
    if (p.mode != AttackMode::Proportional) {
        throw ParameterError("split-noise fakes need the oracle noise arrays");
    }
    if (p.beta != p.gamma) {
        throw ParameterError(
            "proportional mode needs beta == gamma: only the noise sum is observable");
    }
    if (!(a0_nominal > 0.0)) throw ParameterError("nominal a0 must be positive");

    const auto noise = extracted.samples();
    EnvelopeSeries out{std::vector<double>(noise.size()), extracted.sample_rate_hz(),
                       extracted.t0_s()};
    const double level = p.alpha * a0_nominal;
    for (std::size_t i = 0; i < noise.size(); ++i) {
        const double n = i >= p.delay_samples ? noise[i - p.delay_samples] : 0.0;
        out.values_v[i] = level + p.beta * n;
    }
    return out;
}

EnvelopeSeries synthesize_fake(const OracleNoises& noises, const AttackParams& p,
                               double a0_nominal) {
    p.validate();
    if (!(a0_nominal > 0.0)) throw ParameterError("nominal a0 must be positive");
    const auto& w = noises.n_wd;
    const auto& q = noises.n_pd;
    if (w.size() != q.size() || w.sample_rate_hz() != q.sample_rate_hz()) {
        throw ParameterError("oracle noise arrays must share length and rate");
    }
    EnvelopeSeries out{std::vector<double>(w.size()), w.sample_rate_hz(), w.t0_s()};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const bool live = i >= p.delay_samples;
        const double nw = live ? w[i - p.delay_samples] : 0.0;
        const double np = live ? q[i - p.delay_samples] : 0.0;
        out.values_v[i] = a0_nominal * (p.alpha + p.beta * nw + p.gamma * np);
    }
    return out;
}

EnvelopeSeries naive_attack(double a0_nominal, double alpha, double duration_s, double rate_hz,
                            double t0_s) {
    if (!(alpha >= 0.0)) throw ParameterError("alpha must be non-negative");
    if (!(a0_nominal > 0.0)) throw ParameterError("nominal a0 must be positive");
    const std::size_t n = sample_count(duration_s, rate_hz);
    return EnvelopeSeries{std::vector<double>(n, alpha * a0_nominal), rate_hz, t0_s};
}

}  // namespace dwsim
