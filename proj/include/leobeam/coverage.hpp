#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leobeam/geometry.hpp"

namespace leobeam::coverage {

enum class CaseId {
    single,             // one zenith satellite (0 dB everywhere)
    two_parallel,       // two satellites, common heading
    two_perpendicular,  // two satellites, orthogonal headings
    four_parallel,      // four satellites, common heading
    four_perpendicular, // two pairs on orthogonal headings
    four_intersecting,  // two pairs on planes inclined by intersect_angle
    custom,             // satellites supplied explicitly
};

const char* to_string(CaseId id);
std::optional<CaseId> case_from_string(const std::string& name);

// Tunable inputs for the canonical constellations.
struct ScenarioParams {
    double altitude_km = 550.0;
    double separation_rad = 0.0034906585039886593; // 0.2 degrees between arrival directions
    double frequency_hz = 3.5e9;
    double intersect_angle_rad = 1.0471975511965976; // 60 degrees, four_intersecting only
    double amplitude_at_receiver = 1.4142135623730951; // sqrt(2) * unit reference field
    int grid_resolution = 481;
    double grid_side_m = 48.0;
};

// A fully specified map computation.
struct ScenarioConfig {
    CaseId case_id = CaseId::two_parallel;
    std::vector<geometry::SatelliteBeamSpec> satellites;
    double intersect_angle_rad = 0.0;
    double grid_side_m = 48.0;
    int grid_resolution = 481;
    double wavelength_m = 0.085654988; // c / 3.5 GHz
    double reference_amplitude = 1.0;
    std::optional<double> cutoff_db; // display clip for rendered heat maps
    geometry::EarthModel earth{};
};

void validate(const ScenarioConfig& cfg);

// Canonical constellation for a case. All satellites arrive
// params.separation_rad apart in zenith angle (except `single`), with
// headings chosen per case. `custom` cannot be built from params.
ScenarioConfig build_scenario(CaseId id, const ScenarioParams& params = {});

// Closed-form maximum power ratio for the scenario's constellation,
// relative to the single-beam reference.
double scenario_bound_ratio(const ScenarioConfig& cfg);

// Row-major enhancement grid over a square centred on the receiver.
// values_db[j*resolution + i] is the cell at (x_at(i), y_at(j)); values are
// floored at -60 dB.
struct EnhancementMap {
    int resolution = 0;
    double side_m = 0.0;
    double bound_db = 0.0;
    double max_db = 0.0;
    double min_db = 0.0;
    std::vector<double> values_db;
    ScenarioConfig scenario;

    double pitch_m() const { return side_m / (resolution - 1); }
    double x_at(int i) const { return -0.5 * side_m + i * pitch_m(); }
    double y_at(int j) const { return -0.5 * side_m + j * pitch_m(); }
    double at(int i, int j) const {
        return values_db[static_cast<std::size_t>(j) * resolution + i];
    }
};

// Enhancement over a single zenith reference beam at every grid point.
// The parallel and serial versions produce bit-identical maps.
EnhancementMap enhancement_map(const ScenarioConfig& cfg);
EnhancementMap enhancement_map_serial(const ScenarioConfig& cfg);

// Same pipeline with per-satellite timing offsets applied to each beam.
EnhancementMap misaligned_map(const ScenarioConfig& cfg,
                              const std::vector<double>& offsets_s);

// Interference-stripe statistics of a striped map.
struct FringeMetrics {
    double period_m = 0.0;        // distance between adjacent maxima
    double bright_width_m = 0.0;  // half the period (width at the mean level)
    double orientation_rad = 0.0; // stripe direction in the ground plane, [0, pi)
    double fit_r2 = 0.0;          // explained variance of the sinusoid fit
};

// Throws no_fringe_error when the map is flat or has no dominant stripe
// frequency resolvable on the grid (needs >= 8 samples per period).
FringeMetrics fringe_metrics(const EnhancementMap& map);

// Connected bright-spot statistics around the map's global maximum.
struct SpotMetrics {
    double area_m2 = 0.0;             // cell area x cells in the spot
    double equivalent_radius_m = 0.0; // sqrt(area / pi)
    double diagonal_m = 0.0;          // max pairwise extent of the spot
    double peak_db = 0.0;
};

// Cells belong to the spot when they are >= threshold_db and reachable from
// the global maximum by 4-connected non-ascending steps (the main lobe's
// basin); repeats and side lobes at the same level are excluded. A threshold
// above the maximum yields zero area.
SpotMetrics spot_metrics(const EnhancementMap& map, double threshold_db);

// Ground footprint radius of one satellite's beam: altitude * tan(width/2).
double single_sat_cell_radius_km(double beamwidth_rad, double altitude_km);

} // namespace leobeam::coverage
