#pragma once

#include <string_view>

#include "dwsim/sensor.hpp"
#include "dwsim/signal.hpp"

namespace dwsim {

enum class Normalization {
    NominalA0,     // R = a0, strict reading of the cross-correlation detector
    ReportedMean,  // R = mean(S) over the averaging window
};

struct DetectorConfig {
    double t0_s = 60.0;           // averaging time T0
    double threshold = 0.5;       // D_w below this is an attack
    Normalization normalization = Normalization::ReportedMean;
    double expected_nw_ms = 0.0;  // <N_w^2>, known privately to the controller
    double expected_total_ms = 0.0;  // <(N_w + N_p)^2> for the variance test; 0 disables it
    double fault_band_lo = 0.95;  // acceptable mean(S) / a0
    double fault_band_hi = 1.05;
    double variance_band_lo = 0.8;  // acceptable variance ratio
    double variance_band_hi = 1.2;

    void validate() const;
};

enum class Decision { WatermarkPresent, AttackSuspected };
enum class Classification { NoAttack, Attack, FaultSuspected };

struct DetectorVerdict {
    double d_w = 0.0;
    double reported_mean_ratio = 0.0;  // mean(S) / a0
    Decision decision = Decision::AttackSuspected;
    bool fault_flag = false;
    double variance_ratio = 0.0;       // NaN when the variance test is disabled
    bool variance_alarm = false;       // variance ratio outside its band
};

/// Cross-correlation detector over the last t0_s of the report:
///   D_w = <(S - R) N_w> / (R <N_w^2>)
/// with R = a0 or mean(S) (cfg.normalization). n_w_ref is the private watermark
/// on the report grid (same rate and length as `s`, zero delay).
/// ParameterError: t0 longer than the data, mismatched reference, expected_nw_ms <= 0.
/// DegenerateInputError: R <= 0.
DetectorVerdict crosscorr_detect(const EnvelopeSeries& s, const SampledSignal& n_w_ref,
                                 const DetectorConfig& cfg, double a0);

/// var(S / R) / expected_total_ms over the last t0_s. Near 1 matches the
/// watermark-plus-parasitic model, near 0 means the noise was stripped.
double variance_detect(const EnvelopeSeries& s, const DetectorConfig& cfg, double a0,
                       double expected_total_ms);

Classification classify(const DetectorVerdict& v);

std::string_view to_string(Decision d);
std::string_view to_string(Classification c);
std::string_view to_string(Normalization n);

}  // namespace dwsim
