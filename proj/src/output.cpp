#include "leobeam/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"
#include "leobeam/fields.hpp"
#include "leobeam/version.hpp"

namespace leobeam::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// All artifacts are written to a sibling temp file and moved into place, so a
// crash mid-write never leaves a truncated artifact under the final name.
void atomic_write(const std::string& path, const std::string& content) {
    const fs::path target(path);
    fs::path tmp(target);
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.good()) {
            throw computation_error("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out.good()) {
            throw computation_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        throw computation_error("cannot move " + tmp.string() + " into place: " +
                                ec.message());
    }
}

constexpr double pgm_floor_db = -60.0;

} // namespace

void write_map_csv(const std::string& path, const coverage::EnhancementMap& map) {
    std::string text;
    const std::size_t cells =
        static_cast<std::size_t>(map.resolution) * static_cast<std::size_t>(map.resolution);
    text.reserve(cells * 40 + 64);
    text += "x_m,y_m,enhancement_db\n";
    char line[128];
    for (int j = 0; j < map.resolution; ++j) {
        for (int i = 0; i < map.resolution; ++i) {
            std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f\n", map.x_at(i), map.y_at(j),
                          map.at(i, j));
            text += line;
        }
    }
    atomic_write(path, text);
}

void write_map_pgm(const std::string& path, const coverage::EnhancementMap& map) {
    const double top_db = map.bound_db;
    const double span_db = top_db - pgm_floor_db;
    std::string text = "P2\n" + std::to_string(map.resolution) + " " +
                       std::to_string(map.resolution) + "\n65535\n";
    text.reserve(text.size() +
                 static_cast<std::size_t>(map.resolution) * map.resolution * 6 + 64);
    for (int j = map.resolution - 1; j >= 0; --j) { // top row = largest y
        for (int i = 0; i < map.resolution; ++i) {
            double v = map.at(i, j);
            if (map.scenario.cutoff_db && v < *map.scenario.cutoff_db) {
                v = *map.scenario.cutoff_db;
            }
            v = std::clamp(v, pgm_floor_db, top_db);
            const long gray = std::lround((v - pgm_floor_db) / span_db * 65535.0);
            text += std::to_string(gray);
            text += ((i + 1) % 10 == 0 || i + 1 == map.resolution) ? '\n' : ' ';
        }
    }
    atomic_write(path, text);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<impairments::SweepPoint>& sweep) {
    std::string text = "df_hz,enhancement_db\n";
    text.reserve(text.size() + sweep.size() * 32);
    char line[96];
    for (const auto& pt : sweep) {
        std::snprintf(line, sizeof line, "%.6f,%.6f\n", pt.df_hz, pt.enhancement_db);
        text += line;
    }
    atomic_write(path, text);
}

std::string summary_json(const RunRequest& req, const RunResult& res) {
    ordered_json j;
    j["tool"]["name"] = tool_name;
    j["tool"]["version"] = tool_version;
    j["request"] = ordered_json::parse(emit_request_json(req));

    if (res.map) {
        ordered_json m;
        m["resolution"] = res.map->resolution;
        m["side_m"] = res.map->side_m;
        m["pitch_m"] = res.map->pitch_m();
        m["bound_db"] = res.map->bound_db;
        m["max_db"] = res.map->max_db;
        m["min_db"] = res.map->min_db;
        j["map"] = m;
    }
    if (res.fringe) {
        ordered_json f;
        f["period_m"] = res.fringe->period_m;
        f["bright_width_m"] = res.fringe->bright_width_m;
        f["orientation_rad"] = res.fringe->orientation_rad;
        f["orientation_deg"] = res.fringe->orientation_rad * 180.0 / constants::pi;
        f["fit_r2"] = res.fringe->fit_r2;
        j["fringe_metrics"] = f;
    }
    if (res.spot) {
        ordered_json s;
        if (req.metrics.spot_threshold_db) {
            s["threshold_db"] = *req.metrics.spot_threshold_db;
        }
        s["peak_db"] = res.spot->peak_db;
        s["area_m2"] = res.spot->area_m2;
        s["equivalent_radius_m"] = res.spot->equivalent_radius_m;
        s["diagonal_m"] = res.spot->diagonal_m;
        j["spot_metrics"] = s;
    }
    if (res.cell_radius_km) {
        ordered_json c;
        if (req.metrics.beamwidth_rad) {
            c["beamwidth_deg"] = *req.metrics.beamwidth_rad * 180.0 / constants::pi;
        }
        c["radius_km"] = *res.cell_radius_km;
        j["single_satellite_cell"] = c;
    }
    if (req.doppler) {
        ordered_json d;
        d["carrier_hz"] = req.doppler->sweep.carrier_hz;
        d["window_cycles"] = req.doppler->sweep.window_cycles;
        d["points"] = static_cast<int>(res.sweep.size());
        d["df_min_hz"] = req.doppler->sweep.df_min_hz;
        d["df_max_hz"] = req.doppler->sweep.df_max_hz;
        if (res.max_doppler_hz) d["max_abs_doppler_hz"] = *res.max_doppler_hz;
        j["doppler"] = d;
    }
    if (res.budget) {
        ordered_json b;
        b["fspl_db"] = res.budget->fspl_db;
        b["received_power_dbm"] = res.budget->received_dbm;
        if (req.budget) b["sensitivity_dbm"] = req.budget->sensitivity_dbm;
        b["margin_db"] = res.budget->margin_db;
        b["margin_with_enhancement_db"] = res.budget->margin_with_enhancement_db;
        j["link_budget"] = b;
    }
    return j.dump(2) + "\n";
}

RunResult execute(const RunRequest& req) {
    validate(req);
    RunResult res;
    if (req.compute_map) {
        if (req.time_offsets_s.empty()) {
            res.map = coverage::enhancement_map(req.scenario);
        } else {
            res.map = coverage::misaligned_map(req.scenario, req.time_offsets_s);
        }
        if (req.metrics.fringe) {
            res.fringe = coverage::fringe_metrics(*res.map);
        }
        if (req.metrics.spot_threshold_db) {
            res.spot = coverage::spot_metrics(*res.map, *req.metrics.spot_threshold_db);
        }
    }
    if (req.metrics.beamwidth_rad && !req.scenario.satellites.empty()) {
        res.cell_radius_km = coverage::single_sat_cell_radius_km(
            *req.metrics.beamwidth_rad, req.scenario.satellites[0].altitude_km);
    }
    if (req.doppler) {
        res.sweep = impairments::doppler_enhancement_sweep(req.doppler->sweep);
        res.max_doppler_hz = impairments::max_abs_doppler_hz(req.doppler->pass);
    }
    if (req.budget) {
        BudgetResult b;
        b.fspl_db =
            linkbudget::fspl_db(req.budget->distance_km * 1000.0, req.budget->frequency_hz);
        b.received_dbm = linkbudget::received_power_dbm(*req.budget);
        b.margin_db = linkbudget::link_margin_db(b.received_dbm, req.budget->sensitivity_dbm);
        const double enhancement_db =
            res.map ? res.map->bound_db
                    : 10.0 * std::log10(coverage::scenario_bound_ratio(req.scenario));
        b.margin_with_enhancement_db = linkbudget::link_margin_db(
            b.received_dbm, req.budget->sensitivity_dbm, enhancement_db);
        res.budget = b;
    }
    return res;
}

std::vector<std::string> emit_outputs(const RunRequest& req, const RunResult& res) {
    const fs::path dir(req.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw computation_error("cannot create output directory " + dir.string() + ": " +
                                ec.message());
    }
    std::vector<std::string> paths;
    for (OutputKind kind : req.outputs) {
        switch (kind) {
        case OutputKind::grid_csv:
            if (res.map) {
                const auto p = (dir / "enhancement_map.csv").string();
                write_map_csv(p, *res.map);
                paths.push_back(p);
            }
            break;
        case OutputKind::heatmap_pgm:
            if (res.map) {
                const auto p = (dir / "enhancement_map.pgm").string();
                write_map_pgm(p, *res.map);
                paths.push_back(p);
            }
            break;
        case OutputKind::summary_json: {
            const auto p = (dir / "summary.json").string();
            atomic_write(p, summary_json(req, res));
            paths.push_back(p);
            break;
        }
        }
    }
    if (!res.sweep.empty()) {
        const auto p = (dir / "doppler_sweep.csv").string();
        write_sweep_csv(p, res.sweep);
        paths.push_back(p);
    }
    return paths;
}

} // namespace leobeam::io
