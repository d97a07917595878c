#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwsim/config.hpp"
#include "dwsim/controller.hpp"
#include "dwsim/sensor.hpp"
#include "dwsim/signal.hpp"

namespace dwsim {

/// Full-rate and report-rate products of one pass through the signal chain.
struct ChainOutput {
    SampledSignal n_w;          // watermark as generated (zero when not injected)
    SampledSignal n_p;
    SampledSignal line_clean;   // a0 sin(...), empty unless requested
    SampledSignal line_marked;  // a0 [1 + n_w + n_p] sin(...)
    SampledSignal demod;
    EnvelopeSeries envelope;    // S(t)
    SampledSignal nw_reference; // controller's private watermark on the report grid
    SampledSignal nw_reports;   // injected watermark on the report grid (oracle)
    SampledSignal np_reports;
};

/// generate -> modulate -> demodulate -> extract with explicit noise seeds.
/// The controller's reference is always generated from cfg.nw_spec (it is
/// what Conrad believes he injected), even when watermark_inject is false.
/// With `with_clean_line` false the unmodulated reference line is left empty.
ChainOutput simulate_chain(const ScenarioConfig& cfg, bool with_clean_line = true);

enum class TraceKind { Signal, Envelope, EnvelopeNormalized };

struct Trace {
    std::string name;    // file stem
    std::string title;
    std::string y_label; // axis label with unit
    TraceKind kind = TraceKind::Signal;
    SampledSignal data;
};

struct ScenarioResult {
    std::vector<Trace> traces;
    EnvelopeSeries delivered;            // what reached the controller
    std::optional<DetectorVerdict> verdict;
    std::optional<Classification> classification;
    std::vector<std::string> warnings;
    bool degenerate = false;              // detector could not be evaluated
};

/// Runs the whole chain including the optional attack and the detector.
/// A degenerate detector input (e.g. zero watermark) is reported as a warning
/// and leaves `verdict` empty; the run still completes.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Apply cfg.attack to an intercepted report. `chain` supplies the oracle
/// noise arrays for split-noise mode.
EnvelopeSeries apply_attack(const ScenarioConfig& cfg, const ChainOutput& chain);

}  // namespace dwsim
