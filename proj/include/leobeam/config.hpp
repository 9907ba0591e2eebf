#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leobeam/coverage.hpp"
#include "leobeam/impairments.hpp"
#include "leobeam/link_budget.hpp"

namespace leobeam::io {

enum class OutputKind { grid_csv, heatmap_pgm, summary_json };

const char* to_string(OutputKind kind);
std::optional<OutputKind> output_kind_from_string(const std::string& name);

// Optional per-run analysis products.
struct MetricsRequest {
    bool fringe = false;                        // stripe period / width / orientation
    std::optional<double> spot_threshold_db;    // bright-spot stats at this level
    std::optional<double> beamwidth_rad;        // single-satellite footprint radius
};

// A Doppler sweep plus the pass geometry used to report the worst-case shift.
struct DopplerRequest {
    impairments::DopplerSweepConfig sweep;
    impairments::DopplerPassConfig pass;
};

// Everything one invocation computes and writes.
struct RunRequest {
    coverage::ScenarioConfig scenario;
    bool compute_map = true;
    std::vector<OutputKind> outputs{OutputKind::grid_csv, OutputKind::heatmap_pgm,
                                    OutputKind::summary_json};
    std::vector<double> time_offsets_s; // empty = perfectly aligned
    MetricsRequest metrics;
    std::optional<DopplerRequest> doppler;
    std::optional<linkbudget::LinkBudgetConfig> budget;
    std::string out_dir = "out";
};

void validate(const RunRequest& req);

// Parse a JSON document into a request. Collects every violated constraint
// and reports them together in one validation_error.
RunRequest parse_config(const std::string& json_text);

// Read and parse a JSON config file; file-system problems are validation
// errors carrying the path.
RunRequest load_config_file(const std::string& path);

// Canonical JSON echo of a request; parse_config(emit_request_json(r)) is
// equivalent to r.
std::string emit_request_json(const RunRequest& req);

// Named ready-to-run requests ("single", "two_parallel", "two_perpendicular",
// "four_parallel", "four_perpendicular", "four_intersecting").
RunRequest preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace leobeam::io
