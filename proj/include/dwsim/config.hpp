#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dwsim/attacker.hpp"
#include "dwsim/controller.hpp"
#include "dwsim/grid.hpp"
#include "dwsim/sensor.hpp"
#include "dwsim/signal.hpp"

namespace dwsim {

/// Every tunable of a run. Serialized as flat `key = value` text with dotted
/// section keys; see ScenarioConfig::keys() for the full table.
struct ScenarioConfig {
    // grid
    double a0_rms_v = 100e3;
    double f_g_hz = 60.0;
    double phi0_rad = 0.0;
    bool f_g_strict = false;
    double modulation_depth_limit = kDefaultModulationDepthLimit;

    // noises
    bool watermark_inject = true;  // false: the grid carries no watermark
    NoiseSpec nw_spec{0.3, 1.0, 1};
    NoiseSpec np_spec{0.2, 0.5, 2};

    // sensor
    FilterMode sensor_filter = FilterMode::BoxcarAverage;
    double sensor_report_rate_hz = 120.0;
    double sensor_phase_error_rad = 0.0;
    double sensor_lowpass_stop_hz = 0.0;  // 0: 2 f_g - max noise bandwidth

    // detector; expected_nw_ms / expected_total_ms of 0 mean "from the noise specs"
    DetectorConfig detector{};

    // attack
    bool attack_enabled = false;
    AttackParams attack{};
    bool attack_estimate_mean = false;

    double duration_s = 60.0;
    double sample_rate_hz = 6000.0;
    std::uint64_t master_seed = 20240601;
    std::string out_dir = "out";

    GridParams grid() const { return GridParams::from_rms(a0_rms_v, f_g_hz, phi0_rad); }
    SensorConfig sensor() const;
    /// Detector config with automatic <N_w^2> and <(N_w + N_p)^2> filled in.
    DetectorConfig resolved_detector() const;

    /// Throws ConfigError naming the first invalid key.
    void validate() const;

    /// Apply one `key=value` assignment. ConfigError on unknown key or bad value.
    void set(std::string_view key, std::string_view value);

    /// Ordered (key, value) pairs covering every field; values round-trip.
    std::vector<std::pair<std::string, std::string>> to_pairs() const;
    std::string to_text() const;

    static ScenarioConfig parse(std::string_view text);
    static ScenarioConfig load(const std::filesystem::path& path);

    /// All recognised keys in serialization order.
    static std::vector<std::string> keys();
};

/// Built-in presets: "figure_suite" (no attack) and "figure12_attack"
/// (alpha = beta = gamma = 0.5). ConfigError for unknown names.
ScenarioConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace dwsim
