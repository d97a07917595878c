#include "dwsim/controller.hpp"

#include <cmath>
#include <limits>
#include <span>

#include "dwsim/error.hpp"
#include "dwsim/stats.hpp"

namespace dwsim {

void DetectorConfig::validate() const {
    if (!(t0_s > 0.0)) throw ParameterError("detector averaging time must be positive");
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ParameterError("detector threshold must lie in (0, 1)");
    }
    if (!(fault_band_lo < fault_band_hi)) throw ParameterError("fault band is empty");
    if (!(variance_band_lo < variance_band_hi)) throw ParameterError("variance band is empty");
    if (expected_nw_ms < 0.0 || expected_total_ms < 0.0) {
        throw ParameterError("expected mean squares must be non-negative");
    }
}

namespace {

std::size_t window_count(const EnvelopeSeries& s, double t0_s) {
    const double exact = t0_s * s.rate_hz;
    const auto count = static_cast<std::size_t>(std::llround(exact));
    if (count == 0) throw ParameterError("averaging time shorter than one report");
    if (count > s.size()) throw ParameterError("averaging time longer than the available data");
    return count;
}

std::span<const double> last(std::span<const double> x, std::size_t count) {
    return x.subspan(x.size() - count);
}

double reference_level(std::span<const double> s, Normalization mode, double a0) {
    const double level = mode == Normalization::NominalA0 ? a0 : mean(s);
    if (!(level > 0.0)) throw DegenerateInputError("reference level is not positive");
    return level;
}

}  // namespace

DetectorVerdict crosscorr_detect(const EnvelopeSeries& s, const SampledSignal& n_w_ref,
                                 const DetectorConfig& cfg, double a0) {
    cfg.validate();
    if (!(a0 > 0.0)) throw ParameterError("a0 must be positive");
    if (!(cfg.expected_nw_ms > 0.0)) {
        throw ParameterError("expected watermark mean square must be positive");
    }
    if (std::abs(n_w_ref.sample_rate_hz() - s.rate_hz) > 1e-9 * s.rate_hz ||
        n_w_ref.size() != s.size()) {
        throw ParameterError("watermark reference must match the report rate and length");
    }
    const std::size_t count = window_count(s, cfg.t0_s);
    const auto report = last(s.values_v, count);
    const auto ref = last(n_w_ref.samples(), count);

    const double level = reference_level(report, cfg.normalization, a0);
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += (report[i] - level) * ref[i];
    acc /= static_cast<double>(count);

    DetectorVerdict v;
    v.d_w = acc / (level * cfg.expected_nw_ms);
    v.reported_mean_ratio = mean(report) / a0;
    v.decision = v.d_w < cfg.threshold ? Decision::AttackSuspected : Decision::WatermarkPresent;
    v.fault_flag = v.reported_mean_ratio < cfg.fault_band_lo || v.reported_mean_ratio > cfg.fault_band_hi;
    if (cfg.expected_total_ms > 0.0) {
        v.variance_ratio = variance_detect(s, cfg, a0, cfg.expected_total_ms);
        v.variance_alarm =
            v.variance_ratio < cfg.variance_band_lo || v.variance_ratio > cfg.variance_band_hi;
    } else {
        v.variance_ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return v;
}

double variance_detect(const EnvelopeSeries& s, const DetectorConfig& cfg, double a0,
                       double expected_total_ms) {
    if (!(expected_total_ms > 0.0)) {
        throw ParameterError("expected total mean square must be positive");
    }
    if (!(a0 > 0.0)) throw ParameterError("a0 must be positive");
    const std::size_t count = window_count(s, cfg.t0_s);
    const auto report = last(s.values_v, count);
    const double level = reference_level(report, cfg.normalization, a0);
    const double m = mean(report);
    double acc = 0.0;
    for (double x : report) acc += (x - m) * (x - m);
    return acc / static_cast<double>(count) / (level * level) / expected_total_ms;
}

Classification classify(const DetectorVerdict& v) {
    if (v.decision == Decision::AttackSuspected) return Classification::Attack;
    return v.fault_flag ? Classification::FaultSuspected : Classification::NoAttack;
}

std::string_view to_string(Decision d) {
    return d == Decision::WatermarkPresent ? "WATERMARK_PRESENT" : "ATTACK_SUSPECTED";
}

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::NoAttack: return "NO_ATTACK";
        case Classification::Attack: return "ATTACK";
        case Classification::FaultSuspected: return "FAULT_SUSPECTED";
    }
    return "?";
}

std::string_view to_string(Normalization n) {
    return n == Normalization::NominalA0 ? "nominal_a0" : "reported_mean";
}

}  // namespace dwsim
