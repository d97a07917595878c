#include "dwsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "dwsim/error.hpp"
#include "dwsim/noise.hpp"
#include "dwsim/stats.hpp"

namespace dwsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key),
                          "expected an unsigned integer, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(std::string(key), "expected true/false, got '" + std::string(text) + "'");
}

// 0 stands for "derive from the noise specs".
double parse_auto(std::string_view key, std::string_view text) {
    return text == "auto" ? 0.0 : parse_double(key, text);
}

std::string format_auto(double v) { return v == 0.0 ? "auto" : format_double(v); }

struct Field {
    const char* key;
    std::function<std::string(const ScenarioConfig&)> get;
    std::function<void(ScenarioConfig&, std::string_view key, std::string_view)> set;
};

#define DWSIM_DOUBLE(name, member)                                                     \
    Field {                                                                            \
        name, [](const ScenarioConfig& c) { return format_double(c.member); },         \
            [](ScenarioConfig& c, std::string_view k, std::string_view v) {            \
                c.member = parse_double(k, v);                                         \
            }                                                                          \
    }
#define DWSIM_BOOL(name, member)                                                       \
    Field {                                                                            \
        name, [](const ScenarioConfig& c) { return std::string(c.member ? "true" : "false"); }, \
            [](ScenarioConfig& c, std::string_view k, std::string_view v) {            \
                c.member = parse_bool(k, v);                                           \
            }                                                                          \
    }
#define DWSIM_U64(name, member)                                                        \
    Field {                                                                            \
        name, [](const ScenarioConfig& c) { return std::to_string(c.member); },        \
            [](ScenarioConfig& c, std::string_view k, std::string_view v) {            \
                c.member = parse_u64(k, v);                                            \
            }                                                                          \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        DWSIM_DOUBLE("a0_rms_v", a0_rms_v),
        DWSIM_DOUBLE("f_g_hz", f_g_hz),
        DWSIM_DOUBLE("phi0_rad", phi0_rad),
        DWSIM_BOOL("f_g_strict", f_g_strict),
        DWSIM_DOUBLE("modulation_depth_limit", modulation_depth_limit),
        DWSIM_BOOL("watermark.inject", watermark_inject),
        DWSIM_DOUBLE("nw_rms", nw_spec.rms),
        DWSIM_DOUBLE("nw_bandwidth_hz", nw_spec.bandwidth_hz),
        DWSIM_U64("nw_seed", nw_spec.seed),
        DWSIM_DOUBLE("np_rms", np_spec.rms),
        DWSIM_DOUBLE("np_bandwidth_hz", np_spec.bandwidth_hz),
        DWSIM_U64("np_seed", np_spec.seed),
        DWSIM_DOUBLE("duration_s", duration_s),
        DWSIM_DOUBLE("sample_rate_hz", sample_rate_hz),
        DWSIM_U64("master_seed", master_seed),
        Field{"out_dir", [](const ScenarioConfig& c) { return c.out_dir; },
              [](ScenarioConfig& c, std::string_view, std::string_view v) { c.out_dir = v; }},
        Field{"sensor.filter_mode",
              [](const ScenarioConfig& c) {
                  return std::string(c.sensor_filter == FilterMode::Lowpass ? "lowpass" : "boxcar");
              },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  if (v == "boxcar" || v == "boxcar_average") {
                      c.sensor_filter = FilterMode::BoxcarAverage;
                  } else if (v == "lowpass") {
                      c.sensor_filter = FilterMode::Lowpass;
                  } else {
                      throw ConfigError(std::string(k), "expected boxcar or lowpass");
                  }
              }},
        DWSIM_DOUBLE("sensor.report_rate_hz", sensor_report_rate_hz),
        DWSIM_DOUBLE("sensor.phase_error_rad", sensor_phase_error_rad),
        Field{"sensor.lowpass_stop_hz",
              [](const ScenarioConfig& c) { return format_auto(c.sensor_lowpass_stop_hz); },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  c.sensor_lowpass_stop_hz = parse_auto(k, v);
              }},
        DWSIM_DOUBLE("detector.t0_s", detector.t0_s),
        DWSIM_DOUBLE("detector.threshold", detector.threshold),
        Field{"detector.normalization",
              [](const ScenarioConfig& c) { return std::string(to_string(c.detector.normalization)); },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  if (v == "nominal_a0") {
                      c.detector.normalization = Normalization::NominalA0;
                  } else if (v == "reported_mean") {
                      c.detector.normalization = Normalization::ReportedMean;
                  } else {
                      throw ConfigError(std::string(k), "expected nominal_a0 or reported_mean");
                  }
              }},
        Field{"detector.expected_nw_ms",
              [](const ScenarioConfig& c) { return format_auto(c.detector.expected_nw_ms); },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  c.detector.expected_nw_ms = parse_auto(k, v);
              }},
        Field{"detector.expected_total_ms",
              [](const ScenarioConfig& c) { return format_auto(c.detector.expected_total_ms); },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  c.detector.expected_total_ms = parse_auto(k, v);
              }},
        DWSIM_DOUBLE("detector.fault_band_lo", detector.fault_band_lo),
        DWSIM_DOUBLE("detector.fault_band_hi", detector.fault_band_hi),
        DWSIM_DOUBLE("detector.variance_band_lo", detector.variance_band_lo),
        DWSIM_DOUBLE("detector.variance_band_hi", detector.variance_band_hi),
        DWSIM_BOOL("attack.enabled", attack_enabled),
        DWSIM_DOUBLE("attack.alpha", attack.alpha),
        DWSIM_DOUBLE("attack.beta", attack.beta),
        DWSIM_DOUBLE("attack.gamma", attack.gamma),
        Field{"attack.mode",
              [](const ScenarioConfig& c) {
                  return std::string(c.attack.mode == AttackMode::SplitNoise ? "split_noise"
                                                                             : "proportional");
              },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  if (v == "proportional") {
                      c.attack.mode = AttackMode::Proportional;
                  } else if (v == "split_noise") {
                      c.attack.mode = AttackMode::SplitNoise;
                  } else {
                      throw ConfigError(std::string(k), "expected proportional or split_noise");
                  }
              }},
        Field{"attack.delay_samples",
              [](const ScenarioConfig& c) { return std::to_string(c.attack.delay_samples); },
              [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                  c.attack.delay_samples = static_cast<std::size_t>(parse_u64(k, v));
              }},
        DWSIM_BOOL("attack.estimate_mean", attack_estimate_mean),
    };
    return table;
}

#undef DWSIM_DOUBLE
#undef DWSIM_BOOL
#undef DWSIM_U64

template <typename F>
void check(std::string_view key, F&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string(key), e.what());
    }
}

}  // namespace

SensorConfig ScenarioConfig::sensor() const {
    SensorConfig s = SensorConfig::locked_to(f_g_hz, phi0_rad, sensor_phase_error_rad);
    s.filter_mode = sensor_filter;
    s.report_rate_hz = sensor_report_rate_hz;
    s.lowpass_stop_hz = sensor_lowpass_stop_hz > 0.0
                            ? sensor_lowpass_stop_hz
                            : 2.0 * f_g_hz - std::max(nw_spec.bandwidth_hz, np_spec.bandwidth_hz);
    return s;
}

DetectorConfig ScenarioConfig::resolved_detector() const {
    DetectorConfig d = detector;
    if (d.expected_nw_ms == 0.0) d.expected_nw_ms = nw_spec.rms * nw_spec.rms;
    if (d.expected_total_ms == 0.0) {
        d.expected_total_ms = nw_spec.rms * nw_spec.rms + np_spec.rms * np_spec.rms;
    }
    return d;
}

void ScenarioConfig::validate() const {
    if (!(a0_rms_v > 0.0)) throw ConfigError("a0_rms_v", "must be positive");
    check("f_g_hz", [&] { grid().validate(f_g_strict); });
    if (!(modulation_depth_limit > 0.0)) {
        throw ConfigError("modulation_depth_limit", "must be positive");
    }
    if (!(duration_s > 0.0)) throw ConfigError("duration_s", "must be positive");
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz", "must be positive");
    check("duration_s", [&] { sample_count(duration_s, sample_rate_hz); });
    if (sample_rate_hz < 10.0 * f_g_hz) {
        throw ConfigError("sample_rate_hz", "must be at least 10x the grid frequency");
    }
    for (const auto& [prefix, spec] : {std::pair{"nw", &nw_spec}, std::pair{"np", &np_spec}}) {
        if (!(spec->rms >= 0.0)) throw ConfigError(std::string(prefix) + "_rms", "must be >= 0");
        if (!(spec->bandwidth_hz > 0.0 && spec->bandwidth_hz < sample_rate_hz / 2.0)) {
            throw ConfigError(std::string(prefix) + "_bandwidth_hz", "must lie in (0, Nyquist)");
        }
        if (spec->bandwidth_hz * duration_s < 1.0 - 1e-9) {
            throw ConfigError(std::string(prefix) + "_bandwidth_hz",
                              "record too short to resolve this bandwidth");
        }
    }
    const SensorConfig s = sensor();
    check("sensor.report_rate_hz", [&] {
        s.validate();
        integer_window(1.0 / s.report_rate_hz, sample_rate_hz);
    });
    check("sensor.filter_mode", [&] {
        if (s.filter_mode == FilterMode::BoxcarAverage) integer_window(s.avg_window_s, sample_rate_hz);
    });
    check("detector.threshold", [&] { detector.validate(); });
    if (detector.t0_s > duration_s + 1e-9) {
        throw ConfigError("detector.t0_s", "longer than the simulated duration");
    }
    check("attack.alpha", [&] { attack.validate(); });
    if (attack.mode == AttackMode::Proportional && attack.beta != attack.gamma) {
        throw ConfigError("attack.gamma",
                          "proportional mode needs beta == gamma (only the noise sum is observable)");
    }
}

void ScenarioConfig::set(std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    for (const auto& f : fields()) {
        if (key == f.key) {
            f.set(*this, key, value);
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown configuration key");
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::to_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) out.emplace_back(f.key, f.get(*this));
    return out;
}

std::string ScenarioConfig::to_text() const {
    std::string text;
    for (const auto& [k, v] : to_pairs()) text += k + " = " + v + "\n";
    return text;
}

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
    ScenarioConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
        }
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::vector<std::string> ScenarioConfig::keys() {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.emplace_back(f.key);
    return out;
}

ScenarioConfig preset(std::string_view name) {
    ScenarioConfig cfg;
    cfg.a0_rms_v = 100e3;
    cfg.f_g_hz = 60.0;
    cfg.nw_spec = {0.3, 1.0, 1};
    cfg.np_spec = {0.2, 0.5, 2};
    cfg.duration_s = 60.0;
    cfg.sample_rate_hz = 6000.0;
    cfg.detector.t0_s = 60.0;
    if (name == "figure_suite") {
        cfg.out_dir = "out/figure_suite";
        return cfg;
    }
    if (name == "figure12_attack") {
        cfg.out_dir = "out/figure12_attack";
        cfg.attack_enabled = true;
        cfg.attack = AttackParams::proportional(0.5);
        return cfg;
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"figure_suite", "figure12_attack"}; }

}  // namespace dwsim
