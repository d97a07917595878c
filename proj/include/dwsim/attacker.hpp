#pragma once

#include <cstddef>

#include "dwsim/sensor.hpp"
#include "dwsim/signal.hpp"

namespace dwsim {

enum class AttackMode {
    Proportional,  // S_f = alpha a0 + beta (S - a0); needs beta == gamma
    SplitNoise,    // omniscient: separate watermark / parasitic arrays supplied
};

struct AttackParams {
    double alpha = 1.0;  // scales R
    double beta = 1.0;   // scales the watermark term
    double gamma = 1.0;  // scales the parasitic term
    AttackMode mode = AttackMode::Proportional;
    std::size_t delay_samples = 0;

    static AttackParams proportional(double k) { return {k, k, k, AttackMode::Proportional, 0}; }
    void validate() const;
};

/// Simulation-only access to the separate noise terms on the report grid
/// (dimensionless, i.e. N_wd and N_pd without the a0 factor).
struct OracleNoises {
    SampledSignal n_wd;
    SampledSignal n_pd;
};

/// E_wdpN(t) = S(t) - a0: the combined watermark-plus-parasitic noise in volts.
/// Uses only the intercepted stream and the public nominal level.
SampledSignal extract_noise(const EnvelopeSeries& s, double a0_nominal);

/// Variant subtracting the stream's own mean instead of the nominal level.
SampledSignal extract_noise_mean_referenced(const EnvelopeSeries& s);

/// Proportional fake S_f = alpha a0 + beta extracted(t - delay). Samples before
/// the delay has elapsed carry no noise. ParameterError unless the mode is
/// Proportional with beta == gamma.
EnvelopeSeries synthesize_fake(const SampledSignal& extracted, const AttackParams& p,
                               double a0_nominal);

/// Omniscient fake S_f = alpha a0 + beta a0 N_wd + gamma a0 N_pd (any beta, gamma).
EnvelopeSeries synthesize_fake(const OracleNoises& noises, const AttackParams& p,
                               double a0_nominal);

/// Constant alpha a0 series with no noise (watermark-free fake).
EnvelopeSeries naive_attack(double a0_nominal, double alpha, double duration_s, double rate_hz,
                            double t0_s = 0.0);

}  // namespace dwsim
