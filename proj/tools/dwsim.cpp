// dwsim: dynamic-watermarking grid simulator and sensor-spoofing attack harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "dwsim/dwsim.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kIoError = 3,
    kDegenerate = 4,
};

struct GlobalOptions {
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    bool strict = false;
};

dwsim::ScenarioConfig resolve_config(const GlobalOptions& g) {
    dwsim::ScenarioConfig cfg;
    if (!g.preset_name.empty()) cfg = dwsim::preset(g.preset_name);
    if (!g.config_path.empty()) cfg = dwsim::ScenarioConfig::load(g.config_path);
    for (const auto& kv : g.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw dwsim::ConfigError(kv, "--set expects key=value");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (g.seed) cfg.master_seed = *g.seed;
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    return cfg;
}

// --seed on a single run selects the same noise seeds as Monte-Carlo trial 0.
dwsim::ScenarioConfig seeded_single_run(const GlobalOptions& g, dwsim::ScenarioConfig cfg) {
    if (!g.seed) return cfg;
    const auto seeded = dwsim::trial_config(cfg, 0);
    cfg.nw_spec.seed = seeded.nw_spec.seed;
    cfg.np_spec.seed = seeded.np_spec.seed;
    return cfg;
}

int report_scenario(const dwsim::ScenarioConfig& cfg, const GlobalOptions& g) {
    const auto result = dwsim::run_scenario(cfg);
    const auto entries = dwsim::emit_outputs(result, cfg, cfg.out_dir);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    if (result.verdict) {
        const auto& v = *result.verdict;
        std::printf("D_w = %.6f  mean ratio = %.6f  variance ratio = %.6f\n", v.d_w,
                    v.reported_mean_ratio, v.variance_ratio);
        std::printf("decision = %s  fault_flag = %s  classification = %s\n",
                    std::string(dwsim::to_string(v.decision)).c_str(), v.fault_flag ? "true" : "false",
                    std::string(dwsim::to_string(dwsim::classify(v))).c_str());
    }
    std::printf("wrote %zu files to %s\n", entries.size() + 1, cfg.out_dir.c_str());
    if (result.degenerate && g.strict) return kDegenerate;
    return kOk;
}

std::vector<dwsim::Arm> parse_arms(const std::string& text) {
    std::vector<dwsim::Arm> arms;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) arms.push_back(dwsim::Arm::parse(item));
    }
    return arms;
}

void print_summary(const dwsim::ExperimentSummary& s) {
    std::printf("%zu trials, threshold %.3f, false alarm rate %.3f, hash %016llx\n", s.trials,
                s.threshold_used, s.false_alarm_rate, static_cast<unsigned long long>(s.hash()));
    std::printf("%-22s %8s %8s %8s %8s %8s %8s\n", "arm", "mean_Dw", "std_Dw", "detect", "var_det",
                "fault", "degen");
    for (const auto& a : s.arms) {
        std::printf("%-22s %8.4f %8.4f %8.3f %8.3f %8.3f %8zu\n", a.label.c_str(), a.d_w_stats.mean,
                    a.d_w_stats.std, a.detection_rate, a.variance_detection_rate, a.fault_rate,
                    a.degenerate);
    }
    std::printf("runtime %.2f s\n", s.runtime_s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic-watermarking smart-grid simulator and attack harness"};
    app.require_subcommand(1);
    GlobalOptions g;
    std::uint64_t seed_value = 0;
    app.add_option("--config", g.config_path, "Scenario config file (key = value)");
    app.add_option("--preset", g.preset_name, "Built-in preset: figure_suite, figure12_attack");
    app.add_option("--out-dir", g.out_dir, "Output directory");
    auto* seed_opt = app.add_option("--seed", seed_value, "Master seed (u64)");
    app.add_option("--set", g.overrides, "Override a config key: key=value (repeatable)");
    app.add_flag("--strict", g.strict, "Treat degenerate-input warnings as errors (exit 4)");

    auto* simulate = app.add_subcommand("simulate", "Run one scenario and write all traces");
    auto* attack = app.add_subcommand("attack", "Run one scenario with the attack enabled");
    double alpha = -1.0, beta = -1.0, gamma = -1.0;
    attack->add_option("--alpha", alpha, "Scale of the nominal level");
    attack->add_option("--beta", beta, "Scale of the watermark term");
    attack->add_option("--gamma", gamma, "Scale of the parasitic term");

    auto* montecarlo = app.add_subcommand("montecarlo", "Monte-Carlo detection experiment");
    std::size_t trials = 100;
    std::string arms_text = "none,naive:1,proportional:0.5";
    unsigned threads = 0;
    montecarlo->add_option("--trials", trials, "Trials per arm")->check(CLI::PositiveNumber);
    montecarlo->add_option("--arms", arms_text,
                           "Comma list: none, unwatermarked, naive[:a], proportional:a[:b], split:a:b:g");
    montecarlo->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* calibrate = app.add_subcommand("calibrate", "Pick a detector threshold for a target false-alarm rate");
    double target_far = 0.05;
    std::string attack_arm = "naive:1";
    std::string no_attack_csv, attack_csv;
    calibrate->add_option("--target-far", target_far, "Target false-alarm rate");
    calibrate->add_option("--trials", trials, "Trials per arm when simulating")->check(CLI::PositiveNumber);
    calibrate->add_option("--attack-arm", attack_arm, "Attack arm to calibrate against");
    calibrate->add_option("--no-attack-csv", no_attack_csv, "CSV with a d_w column (skip simulation)");
    calibrate->add_option("--attack-csv", attack_csv, "CSV with a d_w column (skip simulation)");
    calibrate->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* psd = app.add_subcommand("psd", "Welch PSD of a trace CSV");
    std::string input, output;
    std::size_t segment_len = 0;
    double overlap = 0.5;
    std::vector<std::string> bands;
    psd->add_option("input", input, "Trace CSV (t_s,<value>)")->required();
    psd->add_option("--segment-len", segment_len, "Segment length in samples (default: 10 s or the whole trace)");
    psd->add_option("--overlap", overlap, "Segment overlap fraction");
    psd->add_option("--output", output, "PSD CSV path (default: <out-dir>/<stem>_psd.csv)");
    psd->add_option("--band", bands, "Report band power for lo:hi in Hz (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }
    if (*seed_opt) g.seed = seed_value;

    try {
        dwsim::ScenarioConfig cfg = resolve_config(g);

        if (*simulate) return report_scenario(seeded_single_run(g, cfg), g);

        if (*attack) {
            cfg.attack_enabled = true;
            if (alpha >= 0.0) cfg.attack.alpha = alpha;
            if (beta >= 0.0) cfg.attack.beta = beta;
            if (gamma >= 0.0) cfg.attack.gamma = gamma;
            if (beta >= 0.0 && gamma < 0.0 && cfg.attack.mode == dwsim::AttackMode::Proportional) {
                cfg.attack.gamma = beta;
            }
            return report_scenario(seeded_single_run(g, cfg), g);
        }

        if (*montecarlo) {
            const auto summary = dwsim::run_monte_carlo(cfg, trials, parse_arms(arms_text), threads);
            dwsim::write_summary(cfg.out_dir, cfg, summary);
            print_summary(summary);
            return kOk;
        }

        if (*calibrate) {
            std::vector<double> clean, attacked;
            if (!no_attack_csv.empty() || !attack_csv.empty()) {
                if (no_attack_csv.empty() || attack_csv.empty()) {
                    throw dwsim::ConfigError("calibrate", "give both --no-attack-csv and --attack-csv");
                }
                clean = dwsim::read_column_csv(no_attack_csv, "d_w");
                attacked = dwsim::read_column_csv(attack_csv, "d_w");
            } else {
                const auto summary = dwsim::run_monte_carlo(
                    cfg, trials, {dwsim::Arm::parse("none"), dwsim::Arm::parse(attack_arm)}, threads);
                clean = summary.arms[0].d_w;
                attacked = summary.arms[1].d_w;
            }
            const auto cal = dwsim::calibrate_threshold(clean, attacked, target_far);
            std::printf("threshold = %.6f  false alarm rate = %.4f  miss rate = %.4f  separated = %s\n",
                        cal.threshold, cal.false_alarm_rate, cal.miss_rate,
                        cal.separated ? "true" : "false");
            if (!cal.warning.empty()) std::cerr << "warning: " << cal.warning << '\n';
            fs::create_directories(cfg.out_dir);
            nlohmann::ordered_json j{{"target_far", target_far},
                                     {"threshold", cal.threshold},
                                     {"false_alarm_rate", cal.false_alarm_rate},
                                     {"miss_rate", cal.miss_rate},
                                     {"separated", cal.separated},
                                     {"warning", cal.warning}};
            std::ofstream(fs::path(cfg.out_dir) / "calibration.json") << j.dump(2) << '\n';
            return kOk;
        }

        if (*psd) {
            const auto trace = dwsim::read_signal_csv(input);
            if (segment_len == 0) {
                segment_len = std::min(trace.size(),
                                       static_cast<std::size_t>(10.0 * trace.sample_rate_hz()));
            }
            const auto est = dwsim::psd_welch(trace, segment_len, overlap);
            if (output.empty()) {
                output = (fs::path(cfg.out_dir) / (fs::path(input).stem().string() + "_psd.csv")).string();
            }
            fs::create_directories(fs::path(output).parent_path().empty() ? fs::path(".")
                                                                          : fs::path(output).parent_path());
            dwsim::write_psd_csv(output, est);
            std::printf("fs = %g Hz  resolution = %g Hz  total power = %.9g\n",
                        trace.sample_rate_hz(), est.resolution_hz, dwsim::total_power(est));
            for (const auto& b : bands) {
                const auto colon = b.find(':');
                if (colon == std::string::npos) throw dwsim::ConfigError("--band", "expected lo:hi");
                const double lo = std::stod(b.substr(0, colon));
                const double hi = std::stod(b.substr(colon + 1));
                std::printf("band [%g, %g] Hz: %.9g\n", lo, hi, dwsim::band_power(est, lo, hi));
            }
            std::printf("wrote %s\n", output.c_str());
            return kOk;
        }
    } catch (const dwsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const dwsim::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kConfigError;
    } catch (const dwsim::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const dwsim::DegenerateInputError& e) {
        std::cerr << "degenerate input: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
