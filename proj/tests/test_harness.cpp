#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

namespace dwsim {
namespace {

namespace fs = std::filesystem;
using test::kA0;

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("dwsim_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Config, RoundTripsThroughText) {
    ScenarioConfig cfg = preset("figure12_attack");
    cfg.sensor_phase_error_rad = 0.125;
    cfg.detector.normalization = Normalization::NominalA0;
    cfg.master_seed = 0xFFFFFFFFFFFFFFFFULL;
    cfg.nw_spec.rms = 0.1 + 0.2;  // not exactly representable in short decimal
    const auto back = ScenarioConfig::parse(cfg.to_text());
    EXPECT_EQ(back.to_pairs(), cfg.to_pairs());
    EXPECT_EQ(back.nw_spec.rms, cfg.nw_spec.rms);
    EXPECT_EQ(back.master_seed, cfg.master_seed);
    EXPECT_EQ(back.keys().size(), back.to_pairs().size());
}

TEST(Config, UnknownKeyAndBadValueNameTheKey) {
    try {
        ScenarioConfig::parse("nw_rms = 0.3\nbogus.key = 1\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "bogus.key");
    }
    try {
        ScenarioConfig::parse("np_bandwidth_hz = fast\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "np_bandwidth_hz");
    }
    ScenarioConfig cfg;
    EXPECT_THROW(cfg.set("detector.normalization", "median"), ConfigError);
    EXPECT_THROW(cfg.set("sensor.filter_mode", "kalman"), ConfigError);
    EXPECT_THROW(preset("figure99"), ConfigError);
}

TEST(Config, ValidationNamesTheKey) {
    auto key_of = [](ScenarioConfig cfg) -> std::string {
        try {
            cfg.validate();
        } catch (const ConfigError& e) {
            return e.key();
        }
        return "";
    };
    ScenarioConfig c = preset("figure_suite");
    EXPECT_EQ(key_of(c), "");
    c.sample_rate_hz = 500.0;
    EXPECT_EQ(key_of(c), "sample_rate_hz");
    c = preset("figure_suite");
    c.nw_spec.bandwidth_hz = 0.0;
    EXPECT_EQ(key_of(c), "nw_bandwidth_hz");
    c = preset("figure_suite");
    c.detector.t0_s = 90.0;
    EXPECT_EQ(key_of(c), "detector.t0_s");
    c = preset("figure_suite");
    c.attack.beta = 0.3;
    c.attack_enabled = true;
    EXPECT_EQ(key_of(c), "attack.gamma");
}

TEST(Config, CommentsAndBlankLines) {
    const auto cfg = ScenarioConfig::parse("# header\n\n  nw_rms = 0.25  # trailing\n");
    EXPECT_DOUBLE_EQ(cfg.nw_spec.rms, 0.25);
}

TEST(Config, ShippedFilesMatchPresets) {
    for (const auto& name : preset_names()) {
        const auto file = fs::path(DWSIM_SOURCE_DIR) / "configs" / (name + ".cfg");
        ASSERT_TRUE(fs::exists(file)) << file;
        EXPECT_EQ(ScenarioConfig::load(file).to_pairs(), preset(name).to_pairs()) << name;
    }
    EXPECT_THROW(ScenarioConfig::load("/nonexistent/dwsim.cfg"), IoError);
}

TEST(Config, ResolvedDetectorFillsExpectedPowers) {
    const auto det = preset("figure_suite").resolved_detector();
    EXPECT_NEAR(det.expected_nw_ms, 0.09, 1e-15);
    EXPECT_NEAR(det.expected_total_ms, 0.13, 1e-15);
    ScenarioConfig c = preset("figure_suite");
    c.detector.expected_nw_ms = 0.05;
    EXPECT_DOUBLE_EQ(c.resolved_detector().expected_nw_ms, 0.05);
}

TEST(Scenario, FigureSuite) {
    const auto r = run_scenario(preset("figure_suite"));
    ASSERT_TRUE(r.verdict.has_value());
    EXPECT_EQ(*r.classification, Classification::NoAttack);
    EXPECT_EQ(r.traces.size(), 8u);
    EXPECT_FALSE(r.degenerate);
    // 0.3 @ 1 Hz and 0.09 mean square are both flagged as illustrative only.
    EXPECT_EQ(r.warnings.size(), 2u);
    const auto& fig11 = r.traces[6].data;
    EXPECT_NEAR(mean(fig11.samples()), 1.0, 0.01);
}

TEST(Scenario, Figure12Attack) {
    const auto r = run_scenario(preset("figure12_attack"));
    ASSERT_TRUE(r.verdict.has_value());
    EXPECT_EQ(*r.classification, Classification::FaultSuspected);
    EXPECT_NEAR(mean(r.delivered.values_v), 0.5 * kA0, 0.01 * kA0);
    ASSERT_EQ(r.traces.size(), 9u);
    EXPECT_EQ(r.traces.back().name, "fig12_fake_envelope");
}

TEST(Scenario, ZeroNoiseIsDegenerateButCompletes) {
    ScenarioConfig cfg = preset("figure_suite");
    cfg.nw_spec.rms = 0.0;
    cfg.np_spec.rms = 0.0;
    const auto r = run_scenario(cfg);
    EXPECT_TRUE(r.degenerate);
    EXPECT_FALSE(r.verdict.has_value());
    for (double v : r.delivered.values_v) ASSERT_NEAR(v, kA0, 1e-6 * kA0);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Outputs, ManifestCountsAndDeterminism) {
    const auto dir_a = scratch("emit_a");
    const auto dir_b = scratch("emit_b");
    const auto cfg = preset("figure_suite");
    const auto entries = emit_outputs(run_scenario(cfg), cfg, dir_a);
    emit_outputs(run_scenario(cfg), cfg, dir_b);
    std::size_t traces = 0, plots = 0, verdicts = 0;
    for (const auto& e : entries) {
        traces += e.kind == "trace";
        plots += e.kind == "plot";
        verdicts += e.kind == "verdict";
    }
    EXPECT_EQ(traces, 8u);
    EXPECT_EQ(plots, 8u);
    EXPECT_EQ(verdicts, 1u);
    EXPECT_TRUE(fs::exists(dir_a / "manifest.json"));
    for (const auto& e : entries) {
        if (e.kind == "plot") continue;
        EXPECT_EQ(slurp(dir_a / e.file), slurp(dir_b / e.file)) << e.file;
    }
    const auto manifest = slurp(dir_a / "manifest.json");
    EXPECT_NE(manifest.find("\"schema_version\": 1"), std::string::npos);
    EXPECT_NE(manifest.find("\"detector.threshold\""), std::string::npos);
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST(Outputs, EmptyBundleWritesConfigOnly) {
    const auto dir = scratch("emit_empty");
    const auto entries = emit_outputs(ScenarioResult{}, preset("figure_suite"), dir);
    EXPECT_TRUE(entries.empty());
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        (void)e;
        ++files;
    }
    EXPECT_EQ(files, 1u);
    EXPECT_NE(slurp(dir / "manifest.json").find("\"config\""), std::string::npos);
    fs::remove_all(dir);
}

TEST(Outputs, CsvRoundTripIsExact) {
    const auto dir = scratch("csv");
    fs::create_directories(dir);
    const auto x = gen_bandlimited_gaussian({0.3, 1.0, 4}, 2.0, 600.0);
    write_signal_csv(dir / "x.csv", x, "n_w");
    const auto back = read_signal_csv(dir / "x.csv");
    EXPECT_EQ(back.values(), x.values());
    EXPECT_NEAR(back.sample_rate_hz(), 600.0, 1e-6);
    EXPECT_EQ(read_column_csv(dir / "x.csv", "n_w"), x.values());
    EXPECT_THROW(read_column_csv(dir / "x.csv", "missing"), Error);
    EXPECT_THROW(read_signal_csv(dir / "nope.csv"), IoError);
    fs::remove_all(dir);
}

TEST(Outputs, UnwritableDirectoryIsIoError) {
    const auto dir = scratch("blocked");
    fs::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    EXPECT_THROW(emit_outputs(ScenarioResult{}, preset("figure_suite"), dir / "file" / "sub"), IoError);
    fs::remove_all(dir);
}

ScenarioConfig mc_config() {
    ScenarioConfig cfg = preset("figure_suite");
    cfg.sample_rate_hz = 1200.0;
    cfg.duration_s = 20.0;
    cfg.detector.t0_s = 20.0;
    return cfg;
}

TEST(MonteCarlo, SingleTrialMatchesSingleRun) {
    const auto cfg = mc_config();
    const auto s = run_monte_carlo(cfg, 1, {Arm::parse("none")}, 1);
    const auto r = run_scenario(trial_config(cfg, 0));
    ASSERT_TRUE(r.verdict.has_value());
    const auto& arm = s.arm("none");
    EXPECT_EQ(arm.d_w.at(0), r.verdict->d_w);
    EXPECT_EQ(arm.d_w_stats.mean, r.verdict->d_w);
    EXPECT_EQ(arm.d_w_stats.std, 0.0);
    EXPECT_EQ(arm.detection_rate, r.verdict->decision == Decision::AttackSuspected ? 1.0 : 0.0);
}

TEST(MonteCarlo, OrderAndThreadIndependence) {
    const auto cfg = mc_config();
    const std::vector<Arm> fwd{Arm::parse("none"), Arm::parse("naive:1"), Arm::parse("proportional:0.5")};
    const std::vector<Arm> rev{fwd[2], fwd[0], fwd[1]};
    const auto a = run_monte_carlo(cfg, 12, fwd, 1);
    const auto b = run_monte_carlo(cfg, 12, fwd, 4);
    const auto c = run_monte_carlo(cfg, 12, rev, 3);
    EXPECT_EQ(a.hash(), b.hash());
    for (const auto& arm : a.arms) {
        EXPECT_EQ(arm.d_w, c.arm(arm.label).d_w) << arm.label;
        EXPECT_EQ(arm.detection_rate, c.arm(arm.label).detection_rate);
    }
    ScenarioConfig other = cfg;
    other.master_seed += 1;
    EXPECT_NE(run_monte_carlo(other, 12, fwd, 4).hash(), a.hash());
}

TEST(MonteCarlo, Errors) {
    EXPECT_THROW(run_monte_carlo(mc_config(), 0, {Arm::parse("none")}), ParameterError);
    EXPECT_THROW(run_monte_carlo(mc_config(), 3, {}), ParameterError);
    EXPECT_THROW(Arm::parse("sneaky:1"), ParameterError);
    EXPECT_THROW(Arm::parse("split:1:1"), ParameterError);
    EXPECT_THROW(Arm::parse("naive:x"), ParameterError);
}

TEST(MonteCarlo, ArmLabels) {
    EXPECT_EQ(Arm::parse("naive").label(), "naive:1");
    EXPECT_EQ(Arm::parse("proportional:0.5").label(), "proportional:0.5");
    EXPECT_EQ(Arm::parse("proportional:1:0.25").label(), "proportional:1:0.25");
    EXPECT_EQ(Arm::parse("split:1:1:0.3").label(), "split:1:1:0.3");
}

TEST(MonteCarlo, ZeroLevelNaiveArmCountsAsAlarm) {
    const auto s = run_monte_carlo(mc_config(), 3, {Arm::parse("naive:0")}, 1);
    const auto& arm = s.arm("naive:0");
    EXPECT_EQ(arm.degenerate, 3u);
    EXPECT_EQ(arm.detection_rate, 1.0);
}

TEST(Calibration, SeparatedSamples) {
    const auto c = calibrate_threshold({0.95, 1.0, 1.05, 0.98, 1.02}, {0.01, -0.02, 0.03}, 0.05);
    EXPECT_TRUE(c.separated);
    EXPECT_GT(c.threshold, 0.03);
    EXPECT_LT(c.threshold, 0.95);
    EXPECT_EQ(c.false_alarm_rate, 0.0);
    EXPECT_EQ(c.miss_rate, 0.0);
    EXPECT_TRUE(c.warning.empty());
}

TEST(Calibration, IdenticalDistributions) {
    std::vector<double> same;
    for (int i = 0; i < 100; ++i) same.push_back(0.5 + 0.01 * i);
    const auto c = calibrate_threshold(same, same, 0.05);
    EXPECT_FALSE(c.warning.empty());
    EXPECT_NEAR(c.miss_rate, 0.95, 0.011);
    EXPECT_LE(c.false_alarm_rate, 0.05);
}

TEST(Calibration, FigureScenarioSamples) {
    ScenarioConfig cfg = preset("figure_suite");
    cfg.sample_rate_hz = 1200.0;
    const auto s = run_monte_carlo(cfg, 100, {Arm::parse("none"), Arm::parse("naive:1")});
    const auto c = calibrate_threshold(s.arm("none").d_w, s.arm("naive:1").d_w, 0.05);
    EXPECT_GT(c.threshold, 0.15);
    EXPECT_LT(c.threshold, 0.85);
    EXPECT_LT(c.miss_rate, 0.01);
    EXPECT_LE(c.false_alarm_rate, 0.05);
}

TEST(Calibration, Errors) {
    EXPECT_THROW(calibrate_threshold({}, {0.0}, 0.05), ParameterError);
    EXPECT_THROW(calibrate_threshold({1.0}, {}, 0.05), ParameterError);
    EXPECT_THROW(calibrate_threshold({1.0}, {0.0}, 0.0), ParameterError);
    EXPECT_THROW(calibrate_threshold({1.0}, {0.0}, 1.0), ParameterError);
}

TEST(Summary, WritesHashAndPerTrialCsv) {
    const auto dir = scratch("summary");
    const auto cfg = mc_config();
    const auto s = run_monte_carlo(cfg, 4, {Arm::parse("none"), Arm::parse("naive:1")}, 2);
    write_summary(dir, cfg, s);
    const auto json = slurp(dir / "summary.json");
    EXPECT_NE(json.find(std::to_string(s.hash())), std::string::npos);
    const auto csv = slurp(dir / "dw_trials.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "trial,d_w[none],d_w[naive:1]");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    fs::remove_all(dir);
}

}  // namespace
}  // namespace dwsim
