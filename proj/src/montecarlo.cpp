#include "dwsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include <json.hpp>

#include "dwsim/attacker.hpp"
#include "dwsim/error.hpp"
#include "dwsim/rng.hpp"
#include "dwsim/scenario.hpp"

namespace dwsim {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        parts.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s = s.substr(pos + 1);
    }
    return parts;
}

double arm_number(std::string_view text, std::string_view whole) {
    try {
        std::size_t used = 0;
        const std::string s(text);
        const double v = std::stod(s, &used);
        if (used != s.size() || !(v >= 0.0)) throw std::invalid_argument("bad");
        return v;
    } catch (const std::exception&) {
        throw ParameterError("bad number in arm '" + std::string(whole) + "'");
    }
}

std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

Arm Arm::parse(std::string_view text) {
    const auto parts = split(text, ':');
    const auto kind = parts[0];
    const auto n = parts.size();
    Arm arm;
    if (kind == "none" && n == 1) {
        arm.kind = ArmKind::None;
    } else if (kind == "unwatermarked" && n == 1) {
        arm.kind = ArmKind::Unwatermarked;
    } else if (kind == "naive" && n <= 2) {
        arm.kind = ArmKind::Naive;
        arm.alpha = n == 2 ? arm_number(parts[1], text) : 1.0;
        arm.beta = arm.gamma = 0.0;
    } else if (kind == "proportional" && (n == 2 || n == 3)) {
        arm.kind = ArmKind::Proportional;
        arm.alpha = arm_number(parts[1], text);
        arm.beta = arm.gamma = n == 3 ? arm_number(parts[2], text) : arm.alpha;
    } else if (kind == "split" && n == 4) {
        arm.kind = ArmKind::Split;
        arm.alpha = arm_number(parts[1], text);
        arm.beta = arm_number(parts[2], text);
        arm.gamma = arm_number(parts[3], text);
    } else {
        throw ParameterError("unrecognised arm '" + std::string(text) + "'");
    }
    return arm;
}

std::string Arm::label() const {
    switch (kind) {
        case ArmKind::None: return "none";
        case ArmKind::Unwatermarked: return "unwatermarked";
        case ArmKind::Naive: return "naive:" + fmt(alpha);
        case ArmKind::Proportional:
            return beta == alpha ? "proportional:" + fmt(alpha)
                                 : "proportional:" + fmt(alpha) + ":" + fmt(beta);
        case ArmKind::Split: return "split:" + fmt(alpha) + ":" + fmt(beta) + ":" + fmt(gamma);
    }
    return "?";
}

const ArmSummary& ExperimentSummary::arm(std::string_view label) const {
    for (const auto& a : arms) {
        if (a.label == label) return a;
    }
    throw ParameterError("no arm labelled '" + std::string(label) + "'");
}

DwStats describe(std::vector<double> values) {
    std::erase_if(values, [](double v) { return !std::isfinite(v); });
    DwStats s;
    if (values.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, nan, nan, nan, nan, nan};
    }
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, n - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    s.min = values.front();
    s.max = values.back();
    s.q05 = quantile(0.05);
    s.q50 = quantile(0.5);
    s.q95 = quantile(0.95);
    return s;
}

ScenarioConfig trial_config(const ScenarioConfig& cfg, std::size_t index) {
    ScenarioConfig c = cfg;
    c.nw_spec.seed = derive_seed(cfg.master_seed, index, 0);
    c.np_spec.seed = derive_seed(cfg.master_seed, index, 1);
    c.attack_enabled = false;
    return c;
}

namespace {

struct Outcome {
    double d_w = std::numeric_limits<double>::quiet_NaN();
    double variance_ratio = std::numeric_limits<double>::quiet_NaN();
    bool attack = true;  // undefined detector counts as an alarm
    bool variance_alarm = false;
    bool fault = false;
    Classification cls = Classification::Attack;
    bool degenerate = false;
};

Outcome evaluate(const EnvelopeSeries& s, const SampledSignal& reference, const DetectorConfig& det,
                 double a0) {
    Outcome o;
    try {
        const DetectorVerdict v = crosscorr_detect(s, reference, det, a0);
        o.d_w = v.d_w;
        o.variance_ratio = v.variance_ratio;
        o.attack = v.decision == Decision::AttackSuspected;
        o.variance_alarm = v.variance_alarm;
        o.fault = v.fault_flag;
        o.cls = classify(v);
    } catch (const DegenerateInputError&) {
        o.degenerate = true;
        o.variance_alarm = true;
    }
    return o;
}

std::vector<Outcome> run_trial(const ScenarioConfig& base, std::size_t index,
                               const std::vector<Arm>& arms) {
    const ScenarioConfig cfg = trial_config(base, index);
    const double a0 = cfg.grid().a0_peak_v;
    const DetectorConfig det = cfg.resolved_detector();

    const bool need_marked = std::any_of(arms.begin(), arms.end(),
                                         [](const Arm& a) { return a.kind != ArmKind::Unwatermarked; });
    const bool need_plain = std::any_of(arms.begin(), arms.end(),
                                        [](const Arm& a) { return a.kind == ArmKind::Unwatermarked; });
    std::optional<ChainOutput> marked;
    std::optional<ChainOutput> plain;
    if (need_marked) marked = simulate_chain(cfg, false);
    if (need_plain) {
        ScenarioConfig p = cfg;
        p.watermark_inject = false;
        plain = simulate_chain(p, false);
    }

    std::vector<Outcome> out;
    out.reserve(arms.size());
    for (const Arm& arm : arms) {
        switch (arm.kind) {
            case ArmKind::None:
                out.push_back(evaluate(marked->envelope, marked->nw_reference, det, a0));
                break;
            case ArmKind::Unwatermarked:
                out.push_back(evaluate(plain->envelope, plain->nw_reference, det, a0));
                break;
            case ArmKind::Naive: {
                const auto& env = marked->envelope;
                const EnvelopeSeries fake{std::vector<double>(env.size(), arm.alpha * a0),
                                          env.rate_hz, env.t0_s};
                out.push_back(evaluate(fake, marked->nw_reference, det, a0));
                break;
            }
            case ArmKind::Proportional:
            case ArmKind::Split: {
                ScenarioConfig c = cfg;
                c.attack_enabled = true;
                c.attack.alpha = arm.alpha;
                c.attack.beta = arm.beta;
                c.attack.gamma = arm.gamma;
                c.attack.mode = arm.kind == ArmKind::Split ? AttackMode::SplitNoise
                                                           : AttackMode::Proportional;
                out.push_back(evaluate(apply_attack(c, *marked), marked->nw_reference, det, a0));
                break;
            }
        }
    }
    return out;
}

}  // namespace

ExperimentSummary run_monte_carlo(const ScenarioConfig& cfg, std::size_t trials,
                                  const std::vector<Arm>& arms, unsigned threads) {
    if (trials == 0) throw ParameterError("need at least one trial");
    if (arms.empty()) throw ParameterError("need at least one arm");
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();

    std::vector<std::vector<Outcome>> results(trials);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            try {
                results[i] = run_trial(cfg, i, arms);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = trials;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentSummary summary;
    summary.trials = trials;
    summary.master_seed = cfg.master_seed;
    summary.threshold_used = cfg.detector.threshold;
    summary.false_alarm_rate = std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(trials);
    for (std::size_t a = 0; a < arms.size(); ++a) {
        ArmSummary s;
        s.label = arms[a].label();
        std::size_t detected = 0, var_detected = 0, faults = 0, c_attack = 0, c_fault = 0, c_ok = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const Outcome& o = results[i][a];
            s.d_w.push_back(o.d_w);
            s.variance_ratio.push_back(o.variance_ratio);
            detected += o.attack;
            var_detected += o.variance_alarm;
            faults += o.fault;
            s.degenerate += o.degenerate;
            c_attack += o.cls == Classification::Attack;
            c_fault += o.cls == Classification::FaultSuspected;
            c_ok += o.cls == Classification::NoAttack;
        }
        s.d_w_stats = describe(s.d_w);
        s.detection_rate = static_cast<double>(detected) / n;
        s.variance_detection_rate = static_cast<double>(var_detected) / n;
        s.fault_rate = static_cast<double>(faults) / n;
        s.classified_attack = static_cast<double>(c_attack) / n;
        s.classified_fault = static_cast<double>(c_fault) / n;
        s.classified_no_attack = static_cast<double>(c_ok) / n;
        if (arms[a].kind == ArmKind::None) summary.false_alarm_rate = s.detection_rate;
        summary.arms.push_back(std::move(s));
    }
    summary.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return summary;
}

std::string ExperimentSummary::canonical_json() const {
    using nlohmann::ordered_json;
    ordered_json j;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    j["threshold_used"] = threshold_used;
    j["false_alarm_rate"] = false_alarm_rate;
    j["arms"] = ordered_json::array();
    for (const auto& a : arms) {
        ordered_json s;
        s["label"] = a.label;
        s["detection_rate"] = a.detection_rate;
        s["variance_detection_rate"] = a.variance_detection_rate;
        s["fault_rate"] = a.fault_rate;
        s["classified"] = {{"no_attack", a.classified_no_attack},
                           {"attack", a.classified_attack},
                           {"fault_suspected", a.classified_fault}};
        s["degenerate"] = a.degenerate;
        const auto& d = a.d_w_stats;
        s["d_w_stats"] = {{"mean", d.mean}, {"std", d.std}, {"min", d.min}, {"q05", d.q05},
                          {"q50", d.q50},   {"q95", d.q95}, {"max", d.max}};
        s["d_w"] = a.d_w;
        s["variance_ratio"] = a.variance_ratio;
        j["arms"].push_back(std::move(s));
    }
    return j.dump();
}

std::uint64_t ExperimentSummary::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_json()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ThresholdCalibration calibrate_threshold(std::vector<double> no_attack_dw,
                                         std::vector<double> attack_dw, double target_far) {
    if (no_attack_dw.empty() || attack_dw.empty()) {
        throw ParameterError("calibration needs non-empty samples");
    }
    if (!(target_far > 0.0 && target_far < 1.0)) {
        throw ParameterError("target false-alarm rate must lie in (0, 1)");
    }
    std::sort(no_attack_dw.begin(), no_attack_dw.end());
    std::sort(attack_dw.begin(), attack_dw.end());
    const auto n = no_attack_dw.size();

    // theta = x_(k) with k = floor(target * n): at most k samples lie strictly below it.
    const auto k = static_cast<std::size_t>(std::floor(target_far * static_cast<double>(n)));
    const double far_threshold = no_attack_dw[std::min(k, n - 1)];

    ThresholdCalibration c;
    c.separated = attack_dw.back() < far_threshold;
    c.threshold = c.separated ? 0.5 * (attack_dw.back() + far_threshold) : far_threshold;

    const auto below = [&](const std::vector<double>& v) {
        return static_cast<double>(std::lower_bound(v.begin(), v.end(), c.threshold) - v.begin());
    };
    c.false_alarm_rate = below(no_attack_dw) / static_cast<double>(n);
    c.miss_rate = 1.0 - below(attack_dw) / static_cast<double>(attack_dw.size());
    if (c.miss_rate > 0.5) {
        c.warning = "distributions overlap: target false-alarm rate leaves most attacks undetected";
    }
    return c;
}

}  // namespace dwsim
