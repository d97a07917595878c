#include "dwsim/scenario.hpp"

#include <cmath>

#include "dwsim/attacker.hpp"
#include "dwsim/error.hpp"
#include "dwsim/grid.hpp"
#include "dwsim/noise.hpp"

namespace dwsim {

ChainOutput simulate_chain(const ScenarioConfig& cfg, bool with_clean_line) {
    const GridParams grid = cfg.grid();
    const double fs = cfg.sample_rate_hz;
    const double dur = cfg.duration_s;
    const SensorConfig sensor = cfg.sensor();

    SampledSignal n_w = gen_bandlimited_gaussian(cfg.nw_spec, dur, fs);
    SampledSignal n_p = gen_bandlimited_gaussian(cfg.np_spec, dur, fs);
    SampledSignal injected = cfg.watermark_inject ? n_w : SampledSignal::zeros(n_w.size(), fs);

    SampledSignal marked = apply_watermark_modulation(grid, injected, n_p, dur, fs);
    SampledSignal demod = synchronous_demodulate(marked, sensor);
    EnvelopeSeries envelope = sensor_report(extract_envelope(demod, sensor));
    SampledSignal reference = resample_to_reports(n_w, sensor);
    SampledSignal nw_reports = resample_to_reports(injected, sensor);
    SampledSignal np_reports = resample_to_reports(n_p, sensor);

    return ChainOutput{std::move(injected),
                       std::move(n_p),
                       with_clean_line ? synth_line_voltage(grid, dur, fs)
                                       : SampledSignal({}, fs),
                       std::move(marked),
                       std::move(demod),
                       std::move(envelope),
                       std::move(reference),
                       std::move(nw_reports),
                       std::move(np_reports)};
}

EnvelopeSeries apply_attack(const ScenarioConfig& cfg, const ChainOutput& chain) {
    const double a0 = cfg.grid().a0_peak_v;
    if (cfg.attack.mode == AttackMode::SplitNoise) {
        return synthesize_fake(OracleNoises{chain.nw_reports, chain.np_reports}, cfg.attack, a0);
    }
    const SampledSignal extracted = cfg.attack_estimate_mean
                                        ? extract_noise_mean_referenced(chain.envelope)
                                        : extract_noise(chain.envelope, a0);
    return synthesize_fake(extracted, cfg.attack, a0);
}

namespace {

SampledSignal normalized(const EnvelopeSeries& env, double a0) {
    std::vector<double> v(env.values_v);
    for (double& x : v) x /= a0;
    return SampledSignal(std::move(v), env.rate_hz, env.t0_s);
}

SampledSignal sum(const SampledSignal& a, const SampledSignal& b) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return SampledSignal(std::move(v), a.sample_rate_hz(), a.t0_s());
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    ScenarioResult result;
    const GridParams grid = cfg.grid();
    const double a0 = grid.a0_peak_v;

    if (!grid.validate(false)) {
        result.warnings.push_back("grid frequency outside the 59.7-60.3 Hz operating band");
    }
    if (cfg.watermark_inject && !check_bandwidth_rule(cfg.nw_spec)) {
        result.warnings.push_back("watermark bandwidth above the advisable 0.3 Hz");
    }

    ChainOutput chain = simulate_chain(cfg);
    if (!check_modulation_depth(chain.n_w, chain.n_p, cfg.modulation_depth_limit)) {
        result.warnings.push_back("modulation depth exceeds the configured limit (illustrative, "
                                  "not practical for a real grid)");
    }

    result.delivered = cfg.attack_enabled ? apply_attack(cfg, chain) : chain.envelope;

    const DetectorConfig det = cfg.resolved_detector();
    if (!(det.expected_nw_ms > 0.0)) {
        result.degenerate = true;
        result.warnings.push_back("watermark power is zero: detector undefined, no verdict");
    } else {
        try {
            result.verdict = crosscorr_detect(result.delivered, chain.nw_reference, det, a0);
            result.classification = classify(*result.verdict);
        } catch (const DegenerateInputError& e) {
            result.degenerate = true;
            result.warnings.push_back(std::string("detector undefined: ") + e.what());
        }
    }

    auto& t = result.traces;
    t.push_back({"fig05_line_voltage", "Line voltage (ideal grid)", "voltage (V)",
                 TraceKind::Signal, std::move(chain.line_clean)});
    t.push_back({"fig06_watermark_noise", "Watermark noise N_w", "N_w (dimensionless)",
                 TraceKind::Signal, chain.n_w});
    t.push_back({"fig07_parasitic_noise", "Parasitic noise N_p", "N_p (dimensionless)",
                 TraceKind::Signal, chain.n_p});
    t.push_back({"fig08_noise_sum", "N_w + N_p", "N_w + N_p (dimensionless)", TraceKind::Signal,
                 sum(chain.n_w, chain.n_p)});
    t.push_back({"fig09_watermarked_voltage", "Watermarked line voltage", "voltage (V)",
                 TraceKind::Signal, std::move(chain.line_marked)});
    t.push_back({"fig10_demodulated", "Synchronously demodulated line voltage", "voltage (V)",
                 TraceKind::Signal, std::move(chain.demod)});
    t.push_back({"fig11_envelope_normalized", "Sensor output normalized by a0", "envelope / a0",
                 TraceKind::EnvelopeNormalized, normalized(chain.envelope, a0)});
    t.push_back({"sensor_envelope", "Sensor report S(t)", "envelope (V)", TraceKind::Envelope,
                 chain.envelope.as_signal()});
    if (cfg.attack_enabled) {
        t.push_back({"fig12_fake_envelope", "Fake sensor signal S_f(t)", "envelope (V)",
                     TraceKind::Envelope, result.delivered.as_signal()});
    }
    return result;
}

}  // namespace dwsim
