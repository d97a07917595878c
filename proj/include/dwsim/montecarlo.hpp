#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dwsim/config.hpp"

namespace dwsim {

enum class ArmKind {
    None,           // genuine report
    Naive,          // constant alpha a0
    Proportional,   // alpha a0 + beta (S - a0)
    Split,          // omniscient alpha / beta / gamma
    Unwatermarked,  // grid never watermarked; report carries parasitic noise only
};

struct Arm {
    ArmKind kind = ArmKind::None;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    /// "none", "naive[:alpha]", "proportional:alpha[:beta]",
    /// "split:alpha:beta:gamma", "unwatermarked".
    static Arm parse(std::string_view text);
    std::string label() const;
};

struct DwStats {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    double max = 0.0;
};

struct ArmSummary {
    std::string label;
    std::vector<double> d_w;              // per trial, index order
    std::vector<double> variance_ratio;
    DwStats d_w_stats;
    double detection_rate = 0.0;          // crosscorr decision == attack
    double variance_detection_rate = 0.0; // variance ratio outside band
    double fault_rate = 0.0;
    double classified_attack = 0.0;
    double classified_fault = 0.0;
    double classified_no_attack = 0.0;
    std::size_t degenerate = 0;           // trials where the detector was undefined
};

struct ExperimentSummary {
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
    double threshold_used = 0.0;
    std::vector<ArmSummary> arms;
    double false_alarm_rate = 0.0;  // detection rate of the "none" arm (NaN if absent)
    double runtime_s = 0.0;

    const ArmSummary& arm(std::string_view label) const;

    /// Canonical JSON of every number except runtime.
    std::string canonical_json() const;
    /// FNV-1a 64 of canonical_json().
    std::uint64_t hash() const;
};

/// `trials` independent end-to-end runs per arm. Trial i uses noise seeds
/// derive_seed(master_seed, i, {0, 1}) for every arm, so results depend only on
/// (master_seed, i). `threads` = 0 picks the hardware concurrency.
/// ParameterError for trials == 0 or an empty arm list.
ExperimentSummary run_monte_carlo(const ScenarioConfig& cfg, std::size_t trials,
                                  const std::vector<Arm>& arms, unsigned threads = 0);

/// Noise seeds used for trial `index`.
ScenarioConfig trial_config(const ScenarioConfig& cfg, std::size_t index);

struct ThresholdCalibration {
    double threshold = 0.0;
    double false_alarm_rate = 0.0;  // achieved on the no-attack sample
    double miss_rate = 0.0;         // attack samples at or above the threshold
    bool separated = false;         // every attack sample below the FAR quantile
    std::string warning;            // non-empty when the target cannot be met usefully
};

/// Largest threshold whose empirical false-alarm rate P(D_w < theta | no attack)
/// stays <= target_far. When the attack sample lies entirely below it, theta
/// moves to the midpoint of the gap. ParameterError on empty input or a
/// target outside (0, 1).
ThresholdCalibration calibrate_threshold(std::vector<double> no_attack_dw,
                                         std::vector<double> attack_dw, double target_far);

DwStats describe(std::vector<double> values);

}  // namespace dwsim
