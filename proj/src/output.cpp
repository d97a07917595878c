#include "dwsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwsim/error.hpp"
#include "dwsim/plot.hpp"

namespace fs = std::filesystem;

namespace dwsim {

namespace {

void append_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "nan";
        return;
    }
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError(path.string(), "write failed");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create directory: " + ec.message());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        cells.push_back(cell);
    }
    return cells;
}

double parse_cell(const std::string& cell, const fs::path& path, std::size_t line) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && *begin == ' ') ++begin;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{}) {
        throw IoError(path.string(), "line " + std::to_string(line) + ": not a number");
    }
    return v;
}

std::string column_for(TraceKind kind) {
    switch (kind) {
        case TraceKind::Envelope: return "envelope_v";
        case TraceKind::EnvelopeNormalized: return "envelope_norm";
        case TraceKind::Signal: break;
    }
    return "value";
}

}  // namespace

void write_signal_csv(const fs::path& path, const SampledSignal& x, const std::string& value_column) {
    std::string out;
    out.reserve(x.size() * 48 + 32);
    out += "t_s," + value_column + "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        append_number(out, x.time_at(i));
        out += ',';
        append_number(out, x[i]);
        out += '\n';
    }
    write_file(path, out);
}

void write_psd_csv(const fs::path& path, const PsdEstimate& p) {
    std::string out = "f_hz,psd\n";
    for (std::size_t k = 0; k < p.psd.size(); ++k) {
        append_number(out, p.freqs_hz[k]);
        out += ',';
        append_number(out, p.psd[k]);
        out += '\n';
    }
    write_file(path, out);
}

SampledSignal read_signal_csv(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string(), "empty file");
    if (split_csv_line(line).size() < 2) throw IoError(path.string(), "expected two columns");
    std::vector<double> t, v;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < 2) throw IoError(path.string(), "line " + std::to_string(line_no) + ": expected two columns");
        t.push_back(parse_cell(cells[0], path, line_no));
        v.push_back(parse_cell(cells[1], path, line_no));
    }
    if (t.size() < 2) throw IoError(path.string(), "need at least two samples");
    double rate = static_cast<double>(t.size() - 1) / (t.back() - t.front());
    if (!(rate > 0.0) || !std::isfinite(rate)) throw IoError(path.string(), "time column not increasing");
    if (std::abs(rate - std::round(rate)) < 1e-6 * rate) rate = std::round(rate);
    return SampledSignal(std::move(v), rate, t.front());
}

std::vector<double> read_column_csv(const fs::path& path, const std::string& column) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string(), "empty file");
    const auto header = split_csv_line(line);
    std::size_t col = 0;
    if (header.size() > 1) {
        const auto it = std::find(header.begin(), header.end(), column);
        if (it == header.end()) throw IoError(path.string(), "no column '" + column + "'");
        col = static_cast<std::size_t>(it - header.begin());
    }
    std::vector<double> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (col >= cells.size()) throw IoError(path.string(), "short line " + std::to_string(line_no));
        out.push_back(parse_cell(cells[col], path, line_no));
    }
    return out;
}

void write_verdict_csv(const fs::path& path, double t0_s, const ScenarioResult& result) {
    std::string out = "t0_s,d_w,reported_mean_ratio,variance_ratio,decision,fault_flag,classification\n";
    append_number(out, t0_s);
    out += ',';
    if (result.verdict) {
        const auto& v = *result.verdict;
        append_number(out, v.d_w);
        out += ',';
        append_number(out, v.reported_mean_ratio);
        out += ',';
        append_number(out, v.variance_ratio);
        out += ',';
        out += to_string(v.decision);
        out += ',';
        out += v.fault_flag ? "true" : "false";
        out += ',';
        out += to_string(classify(v));
    } else {
        out += "nan,nan,nan,UNDEFINED,false,UNDEFINED";
    }
    out += '\n';
    write_file(path, out);
}

std::vector<ManifestEntry> emit_outputs(const ScenarioResult& result, const ScenarioConfig& cfg,
                                        const fs::path& out_dir) {
    ensure_dir(out_dir);
    std::vector<ManifestEntry> entries;
    for (const Trace& t : result.traces) {
        const std::string column = column_for(t.kind);
        const std::string csv = t.name + ".csv";
        write_signal_csv(out_dir / csv, t.data, column);
        entries.push_back({csv, "trace", "t_s," + column});

        std::vector<double> time(t.data.size());
        for (std::size_t i = 0; i < time.size(); ++i) time[i] = t.data.time_at(i);
        const std::string svg = t.name + ".svg";
        write_file(out_dir / svg,
                   render_svg(time, t.data.samples(), PlotSpec{t.title, "time (s)", t.y_label}));
        entries.push_back({svg, "plot", "svg"});
    }
    if (result.verdict || !result.traces.empty()) {
        write_verdict_csv(out_dir / "verdict.csv", cfg.detector.t0_s, result);
        entries.push_back({"verdict.csv", "verdict",
                           "t0_s,d_w,reported_mean_ratio,variance_ratio,decision,fault_flag,"
                           "classification"});
    }
    write_manifest(out_dir, cfg, entries);
    return entries;
}

namespace {

nlohmann::ordered_json config_json(const ScenarioConfig& cfg) {
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.to_pairs()) c[k] = v;
    return c;
}

}  // namespace

void write_manifest(const fs::path& out_dir, const ScenarioConfig& cfg,
                    const std::vector<ManifestEntry>& entries) {
    ensure_dir(out_dir);
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["generator"] = "dwsim";
    j["config"] = config_json(cfg);
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        j["files"].push_back({{"file", e.file}, {"kind", e.kind}, {"schema", e.schema}});
    }
    write_file(out_dir / "manifest.json", j.dump(2) + "\n");
}

void write_summary(const fs::path& out_dir, const ScenarioConfig& cfg,
                   const ExperimentSummary& summary) {
    ensure_dir(out_dir);
    auto j = nlohmann::ordered_json::parse(summary.canonical_json());
    j["hash"] = summary.hash();
    j["runtime_s"] = summary.runtime_s;
    write_file(out_dir / "summary.json", j.dump(2) + "\n");

    std::string csv = "trial";
    for (const auto& a : summary.arms) csv += ",d_w[" + a.label + "]";
    csv += '\n';
    for (std::size_t i = 0; i < summary.trials; ++i) {
        csv += std::to_string(i);
        for (const auto& a : summary.arms) {
            csv += ',';
            append_number(csv, a.d_w[i]);
        }
        csv += '\n';
    }
    write_file(out_dir / "dw_trials.csv", csv);

    write_manifest(out_dir, cfg,
                   {{"summary.json", "summary", "json"},
                    {"dw_trials.csv", "trials", "trial,d_w[<arm>]..."}});
}

}  // namespace dwsim
