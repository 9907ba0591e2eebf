#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leobeam/config.hpp"

namespace leobeam::io {

struct BudgetResult {
    double fspl_db = 0.0;
    double received_dbm = 0.0;
    double margin_db = 0.0;                  // no beamforming enhancement
    double margin_with_enhancement_db = 0.0; // at the scenario's closed-form max
};

struct RunResult {
    std::optional<coverage::EnhancementMap> map;
    std::optional<coverage::FringeMetrics> fringe;
    std::optional<coverage::SpotMetrics> spot;
    std::optional<double> cell_radius_km;
    std::vector<impairments::SweepPoint> sweep;
    std::optional<double> max_doppler_hz;
    std::optional<BudgetResult> budget;
};

// Run every computation the request asks for.
RunResult execute(const RunRequest& req);

// x_m,y_m,enhancement_db rows (row-major, 6 decimal places, header included).
void write_map_csv(const std::string& path, const coverage::EnhancementMap& map);

// Plain-text PGM (P2), 16-bit gray, [-60 dB, closed-form max] -> [0, 65535],
// top row = largest y. An optional display cutoff clips values first.
void write_map_pgm(const std::string& path, const coverage::EnhancementMap& map);

// df_hz,enhancement_db rows.
void write_sweep_csv(const std::string& path,
                     const std::vector<impairments::SweepPoint>& sweep);

// Machine-readable run summary: tool version, scenario echo, map extrema,
// metrics, Doppler and budget results when present.
std::string summary_json(const RunRequest& req, const RunResult& res);

// Write every requested artifact under req.out_dir (created if missing) via
// temp-file-plus-rename. Returns the paths written.
std::vector<std::string> emit_outputs(const RunRequest& req, const RunResult& res);

} // namespace leobeam::io
