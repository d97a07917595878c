#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dwsim/dwsim.hpp"

namespace py = pybind11;
using namespace dwsim;

namespace {

py::array_t<double> to_array(std::span<const double> x) {
    py::array_t<double> out(static_cast<py::ssize_t>(x.size()));
    std::copy(x.begin(), x.end(), out.mutable_data());
    return out;
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw ParameterError("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

py::dict verdict_dict(const DetectorVerdict& v) {
    py::dict d;
    d["d_w"] = v.d_w;
    d["reported_mean_ratio"] = v.reported_mean_ratio;
    d["decision"] = std::string(to_string(v.decision));
    d["fault_flag"] = v.fault_flag;
    d["variance_ratio"] = v.variance_ratio;
    d["variance_alarm"] = v.variance_alarm;
    d["classification"] = std::string(to_string(classify(v)));
    return d;
}

ScenarioConfig make_config(const std::string& preset_name, const std::map<std::string, std::string>& overrides) {
    ScenarioConfig cfg = preset_name.empty() ? ScenarioConfig{} : preset(preset_name);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(dwsim, m) {
    m.doc() = "Dynamic watermarking attack simulator";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<ScenarioConfig>(m, "Config")
        .def(py::init(&make_config), py::arg("preset") = "",
             py::arg("overrides") = std::map<std::string, std::string>{})
        .def_static("load", &ScenarioConfig::load)
        .def_static("parse", &ScenarioConfig::parse)
        .def_static("keys", &ScenarioConfig::keys)
        .def("set", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.set(k, v); })
        .def("get", [](const ScenarioConfig& c, const std::string& key) {
            for (const auto& [k, v] : c.to_pairs()) {
                if (k == key) return v;
            }
            throw ConfigError(key, "unknown configuration key");
        })
        .def("to_dict", [](const ScenarioConfig& c) {
            py::dict d;
            for (const auto& [k, v] : c.to_pairs()) d[py::str(k)] = v;
            return d;
        })
        .def("to_text", &ScenarioConfig::to_text)
        .def("validate", &ScenarioConfig::validate)
        .def("__repr__", [](const ScenarioConfig& c) { return "<dwsim.Config\n" + c.to_text() + ">"; });

    m.def("preset_names", &preset_names);

    m.def(
        "gen_bandlimited_gaussian",
        [](double rms, double bandwidth_hz, std::uint64_t seed, double duration_s, double fs) {
            return to_array(gen_bandlimited_gaussian({rms, bandwidth_hz, seed}, duration_s, fs).samples());
        },
        py::arg("rms"), py::arg("bandwidth_hz"), py::arg("seed"), py::arg("duration_s"),
        py::arg("fs") = 6000.0);

    m.def(
        "psd_welch",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x, double fs,
           std::size_t segment_len, double overlap) {
            const auto p = psd_welch(SampledSignal(from_array(x), fs), segment_len, overlap);
            return py::make_tuple(to_array(p.freqs_hz), to_array(p.psd));
        },
        py::arg("x"), py::arg("fs"), py::arg("segment_len"), py::arg("overlap") = 0.5);

    m.def(
        "band_power",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& freqs,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& psd, double lo, double hi) {
            auto f = from_array(freqs);
            if (f.size() < 2) throw ParameterError("need at least two frequency bins");
            const double df = f[1] - f[0];
            return band_power(PsdEstimate{std::move(f), from_array(psd), df}, lo, hi);
        },
        py::arg("freqs"), py::arg("psd"), py::arg("f_lo"), py::arg("f_hi"));

    m.def(
        "simulate_chain",
        [](const ScenarioConfig& cfg) {
            cfg.validate();
            const auto c = simulate_chain(cfg, false);
            py::dict d;
            d["n_w"] = to_array(c.n_w.samples());
            d["n_p"] = to_array(c.n_p.samples());
            d["envelope"] = to_array(c.envelope.values_v);
            d["envelope_t0_s"] = c.envelope.t0_s;
            d["report_rate_hz"] = c.envelope.rate_hz;
            d["nw_reference"] = to_array(c.nw_reference.samples());
            return d;
        },
        py::arg("config"));

    m.def(
        "crosscorr_detect",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& s,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& ref, double a0,
           double expected_nw_ms, double t0_s, double rate_hz, const std::string& normalization,
           double threshold, double expected_total_ms) {
            DetectorConfig cfg;
            cfg.t0_s = t0_s;
            cfg.threshold = threshold;
            cfg.expected_nw_ms = expected_nw_ms;
            cfg.expected_total_ms = expected_total_ms;
            if (normalization == "nominal_a0") {
                cfg.normalization = Normalization::NominalA0;
            } else if (normalization != "reported_mean") {
                throw ParameterError("normalization must be nominal_a0 or reported_mean");
            }
            const EnvelopeSeries env{from_array(s), rate_hz, 0.0};
            return verdict_dict(crosscorr_detect(env, SampledSignal(from_array(ref), rate_hz), cfg, a0));
        },
        py::arg("envelope"), py::arg("reference"), py::arg("a0"), py::arg("expected_nw_ms"),
        py::arg("t0_s") = 60.0, py::arg("rate_hz") = 120.0, py::arg("normalization") = "reported_mean",
        py::arg("threshold") = 0.5, py::arg("expected_total_ms") = 0.0);

    m.def(
        "run_scenario",
        [](const ScenarioConfig& cfg, const std::optional<std::filesystem::path>& out_dir) {
            const auto r = run_scenario(cfg);
            if (out_dir) emit_outputs(r, cfg, *out_dir);
            py::dict d;
            d["verdict"] = r.verdict ? py::object(verdict_dict(*r.verdict)) : py::none();
            d["warnings"] = r.warnings;
            d["degenerate"] = r.degenerate;
            d["delivered"] = to_array(r.delivered.values_v);
            py::dict traces;
            for (const auto& t : r.traces) traces[py::str(t.name)] = to_array(t.data.samples());
            d["traces"] = traces;
            return d;
        },
        py::arg("config"), py::arg("out_dir") = py::none());

    m.def(
        "run_monte_carlo",
        [](const ScenarioConfig& cfg, std::size_t trials, const std::vector<std::string>& arms,
           unsigned threads) {
            std::vector<Arm> parsed;
            for (const auto& a : arms) parsed.push_back(Arm::parse(a));
            ExperimentSummary s;
            {
                py::gil_scoped_release release;
                s = run_monte_carlo(cfg, trials, parsed, threads);
            }
            py::dict d;
            d["trials"] = s.trials;
            d["false_alarm_rate"] = s.false_alarm_rate;
            d["hash"] = s.hash();
            d["runtime_s"] = s.runtime_s;
            py::dict per_arm;
            for (const auto& a : s.arms) {
                py::dict x;
                x["d_w"] = to_array(a.d_w);
                x["variance_ratio"] = to_array(a.variance_ratio);
                x["detection_rate"] = a.detection_rate;
                x["variance_detection_rate"] = a.variance_detection_rate;
                x["fault_rate"] = a.fault_rate;
                x["degenerate"] = a.degenerate;
                per_arm[py::str(a.label)] = x;
            }
            d["arms"] = per_arm;
            return d;
        },
        py::arg("config"), py::arg("trials") = 100,
        py::arg("arms") = std::vector<std::string>{"none", "naive:1", "proportional:0.5"},
        py::arg("threads") = 0);

    m.def(
        "calibrate_threshold",
        [](std::vector<double> no_attack, std::vector<double> attack, double target_far) {
            const auto c = calibrate_threshold(std::move(no_attack), std::move(attack), target_far);
            py::dict d;
            d["threshold"] = c.threshold;
            d["false_alarm_rate"] = c.false_alarm_rate;
            d["miss_rate"] = c.miss_rate;
            d["separated"] = c.separated;
            d["warning"] = c.warning;
            return d;
        },
        py::arg("no_attack_dw"), py::arg("attack_dw"), py::arg("target_far") = 0.05);
}
