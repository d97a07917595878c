#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dwsim/config.hpp"
#include "dwsim/montecarlo.hpp"
#include "dwsim/scenario.hpp"

namespace dwsim {

inline constexpr int kSchemaVersion = 1;

/// `t_s,<value_column>` with 17 significant digits.
void write_signal_csv(const std::filesystem::path& path, const SampledSignal& x,
                      const std::string& value_column = "value");
void write_psd_csv(const std::filesystem::path& path, const PsdEstimate& p);

/// Two-column CSV with a header; the sample rate is inferred from the time column.
SampledSignal read_signal_csv(const std::filesystem::path& path);
/// Single numeric column (header skipped) or the named column of a wider file.
std::vector<double> read_column_csv(const std::filesystem::path& path, const std::string& column);

void write_verdict_csv(const std::filesystem::path& path, double t0_s,
                       const ScenarioResult& result);

struct ManifestEntry {
    std::string file;
    std::string kind;    // "trace", "plot", "verdict", "summary", ...
    std::string schema;  // CSV header or format tag
};

/// Writes traces, plots, the verdict and manifest.json under out_dir.
/// Returns the manifest entries (the manifest itself excluded).
std::vector<ManifestEntry> emit_outputs(const ScenarioResult& result, const ScenarioConfig& cfg,
                                        const std::filesystem::path& out_dir);

void write_manifest(const std::filesystem::path& out_dir, const ScenarioConfig& cfg,
                    const std::vector<ManifestEntry>& entries);

void write_summary(const std::filesystem::path& out_dir, const ScenarioConfig& cfg,
                   const ExperimentSummary& summary);

}  // namespace dwsim
