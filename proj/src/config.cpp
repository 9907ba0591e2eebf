#include "leobeam/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"
#include "leobeam/geometry.hpp"

namespace leobeam::io {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double deg = constants::pi / 180.0;

std::string quoted_list(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += '"' + n + '"';
    }
    return out;
}

// Typed field access over one JSON object. Violations are collected (with the
// object's path prefix) instead of thrown, so a bad config reports everything
// wrong with it at once; accessors fall back to the default on bad input.
class Section {
public:
    Section(const json& obj, std::string path, std::vector<std::string>& issues)
        : obj_(obj), path_(std::move(path)), issues_(issues) {}

    bool has(const char* key) const { return obj_.contains(key); }

    double number(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number()) {
            complain(key, "must be a number");
            return fallback;
        }
        return v.get<double>();
    }

    double finite(const char* key, double fallback) const {
        const double v = number(key, fallback);
        if (!std::isfinite(v)) {
            complain(key, "must be a finite number");
            return fallback;
        }
        return v;
    }

    double positive(const char* key, double fallback) const {
        const double v = number(key, fallback);
        if (!(std::isfinite(v) && v > 0.0)) {
            complain(key, "must be a positive finite number");
            return fallback;
        }
        return v;
    }

    int integer(const char* key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 2.0e9) {
                return static_cast<int>(d);
            }
        }
        complain(key, "must be an integer");
        return fallback;
    }

    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) {
            complain(key, "must be true or false");
            return fallback;
        }
        return v.get<bool>();
    }

    std::string text(const char* key, std::string fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_string()) {
            complain(key, "must be a string");
            return fallback;
        }
        return v.get<std::string>();
    }

    void complain(const char* key, const std::string& what) const {
        issues_.push_back(path_ + "." + key + " " + what);
    }

private:
    const json& obj_;
    std::string path_;
    std::vector<std::string>& issues_;
};

geometry::SatelliteBeamSpec parse_satellite(const json& obj, const std::string& path,
                                            double default_amplitude,
                                            std::vector<std::string>& issues) {
    Section sat(obj, path, issues);
    geometry::SatelliteBeamSpec spec;
    spec.altitude_km = sat.positive("altitude_km", 550.0);
    const double polar_deg = sat.number("polar_angle_deg", 0.0);
    if (!(std::isfinite(polar_deg) && polar_deg >= 0.0 && polar_deg < 90.0)) {
        sat.complain("polar_angle_deg", "must be in [0, 90) degrees");
    } else {
        spec.polar_angle_rad = polar_deg * deg;
    }
    spec.azimuth_rad = sat.finite("azimuth_deg", 0.0) * deg;
    spec.heading_unit = Vec3{0.0, -1.0, 0.0};
    if (sat.has("heading")) {
        const json& h = obj.at("heading");
        bool shaped = h.is_array() && h.size() == 3;
        if (shaped) {
            for (const auto& c : h) shaped = shaped && c.is_number();
        }
        if (!shaped) {
            sat.complain("heading", "must be an array of three numbers");
        } else {
            const Vec3 v{h[0].get<double>(), h[1].get<double>(), h[2].get<double>()};
            const double len = norm(v);
            if (!(std::isfinite(len) && len > 0.0)) {
                sat.complain("heading", "must have nonzero length");
            } else {
                spec.heading_unit = v / len; // normalized on input
            }
        }
    }
    spec.initial_phase_rad =
        geometry::wrap_two_pi(sat.finite("initial_phase_deg", 0.0) * deg);
    spec.amplitude_at_receiver = sat.positive("amplitude_at_receiver", default_amplitude);
    return spec;
}

ordered_json satellite_json(const geometry::SatelliteBeamSpec& s) {
    ordered_json o;
    o["altitude_km"] = s.altitude_km;
    o["polar_angle_deg"] = s.polar_angle_rad / deg;
    o["azimuth_deg"] = s.azimuth_rad / deg;
    o["heading"] = {s.heading_unit.x, s.heading_unit.y, s.heading_unit.z};
    o["initial_phase_deg"] = s.initial_phase_rad / deg;
    o["amplitude_at_receiver"] = s.amplitude_at_receiver;
    return o;
}

} // namespace

const char* to_string(OutputKind kind) {
    switch (kind) {
    case OutputKind::grid_csv: return "grid_csv";
    case OutputKind::heatmap_pgm: return "heatmap_pgm";
    case OutputKind::summary_json: return "summary_json";
    }
    return "unknown";
}

std::optional<OutputKind> output_kind_from_string(const std::string& name) {
    if (name == "grid_csv") return OutputKind::grid_csv;
    if (name == "heatmap_pgm") return OutputKind::heatmap_pgm;
    if (name == "summary_json") return OutputKind::summary_json;
    return std::nullopt;
}

void validate(const RunRequest& req) {
    std::vector<std::string> issues;
    if (req.outputs.empty()) {
        issues.push_back("outputs must name at least one artifact");
    }
    const bool wants_map =
        std::any_of(req.outputs.begin(), req.outputs.end(), [](OutputKind k) {
            return k == OutputKind::grid_csv || k == OutputKind::heatmap_pgm;
        });
    if (wants_map && !req.compute_map) {
        issues.push_back("outputs ask for a map artifact but compute_map is false");
    }
    if (req.out_dir.empty()) {
        issues.push_back("out_dir must not be empty");
    }
    if (!req.time_offsets_s.empty()) {
        if (req.time_offsets_s.size() != req.scenario.satellites.size()) {
            issues.push_back("time_offsets_s must list one offset per satellite (got " +
                             std::to_string(req.time_offsets_s.size()) + " offsets for " +
                             std::to_string(req.scenario.satellites.size()) +
                             " satellites)");
        }
        for (double t : req.time_offsets_s) {
            if (!std::isfinite(t)) {
                issues.push_back("time_offsets_s entries must be finite");
                break;
            }
        }
    }
    if (req.metrics.spot_threshold_db && !std::isfinite(*req.metrics.spot_threshold_db)) {
        issues.push_back("metrics.spot_threshold_db must be finite");
    }
    if (req.metrics.beamwidth_rad) {
        const double bw = *req.metrics.beamwidth_rad;
        if (!(std::isfinite(bw) && bw > 0.0 && bw < constants::pi)) {
            issues.push_back("metrics.beamwidth_deg must be in (0, 180) degrees");
        }
    }
    try {
        coverage::validate(req.scenario);
    } catch (const validation_error& e) {
        for (const auto& s : e.issues()) issues.push_back("scenario: " + s);
    }
    if (req.doppler) {
        try {
            impairments::validate(req.doppler->sweep);
        } catch (const validation_error& e) {
            for (const auto& s : e.issues()) issues.push_back("doppler: " + s);
        }
        try {
            impairments::validate(req.doppler->pass);
        } catch (const validation_error& e) {
            for (const auto& s : e.issues()) issues.push_back("doppler: " + s);
        }
    }
    if (req.budget) {
        try {
            linkbudget::validate(*req.budget);
        } catch (const validation_error& e) {
            for (const auto& s : e.issues()) issues.push_back("budget: " + s);
        }
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

RunRequest parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw validation_error("config root must be a JSON object");
    }

    std::vector<std::string> issues;
    Section top(root, "config", issues);

    // ---- scenario ----------------------------------------------------------
    json scen_obj = json::object();
    if (root.contains("scenario")) {
        if (!root.at("scenario").is_object()) {
            throw validation_error("config.scenario must be an object");
        }
        scen_obj = root.at("scenario");
    }
    Section scen(scen_obj, "scenario", issues);

    coverage::CaseId case_id = coverage::CaseId::two_parallel;
    const std::string case_name = scen.text("case", "two_parallel");
    if (auto id = coverage::case_from_string(case_name)) {
        case_id = *id;
    } else {
        issues.push_back("scenario.case \"" + case_name + "\" is not recognized; valid cases: " +
                         quoted_list({"single", "two_parallel", "two_perpendicular",
                                      "four_parallel", "four_perpendicular",
                                      "four_intersecting", "custom"}));
    }

    coverage::ScenarioParams params;
    params.altitude_km = scen.positive("altitude_km", params.altitude_km);
    const double sep_deg = scen.positive("separation_deg", params.separation_rad / deg);
    if (sep_deg >= 180.0) {
        scen.complain("separation_deg", "must be below 180 degrees");
    } else {
        params.separation_rad = sep_deg * deg;
    }
    params.frequency_hz = scen.positive("frequency_ghz", params.frequency_hz / 1.0e9) * 1.0e9;
    const double intersect_deg =
        scen.number("intersect_angle_deg", params.intersect_angle_rad / deg);
    if (!(std::isfinite(intersect_deg) && intersect_deg > 0.0 &&
          intersect_deg <= 90.0 + 1e-9)) {
        scen.complain("intersect_angle_deg", "must be in (0, 90] degrees");
    } else {
        params.intersect_angle_rad =
            std::min(intersect_deg * deg, constants::pi / 2.0);
    }
    params.amplitude_at_receiver =
        scen.positive("amplitude_at_receiver", params.amplitude_at_receiver);
    params.grid_resolution = scen.integer("grid_resolution", params.grid_resolution);
    if (params.grid_resolution < 2) {
        scen.complain("grid_resolution", "must be at least 2");
    }
    params.grid_side_m = scen.positive("grid_side_m", params.grid_side_m);
    std::optional<double> cutoff;
    if (scen.has("cutoff_db")) cutoff = scen.finite("cutoff_db", 0.0);

    std::vector<geometry::SatelliteBeamSpec> custom_sats;
    if (case_id == coverage::CaseId::custom) {
        if (!scen_obj.contains("satellites") || !scen_obj.at("satellites").is_array() ||
            scen_obj.at("satellites").empty()) {
            issues.push_back(
                "scenario.satellites must be a non-empty array when case is \"custom\"");
        } else {
            int index = 0;
            for (const auto& entry : scen_obj.at("satellites")) {
                const std::string path =
                    "scenario.satellites[" + std::to_string(index) + "]";
                if (!entry.is_object()) {
                    issues.push_back(path + " must be an object");
                } else {
                    custom_sats.push_back(parse_satellite(
                        entry, path, params.amplitude_at_receiver, issues));
                }
                ++index;
            }
        }
    } else if (scen_obj.contains("satellites")) {
        issues.push_back("scenario.satellites is only accepted when case is \"custom\" "
                         "(canonical cases place their own satellites)");
    }

    // ---- run-level fields --------------------------------------------------
    RunRequest req;
    req.compute_map = top.boolean("compute_map", true);
    if (root.contains("outputs")) {
        const json& arr = root.at("outputs");
        if (!arr.is_array()) {
            issues.push_back("config.outputs must be an array of artifact names");
        } else if (arr.empty()) {
            issues.push_back("config.outputs must name at least one artifact");
        } else {
            req.outputs.clear();
            for (const auto& o : arr) {
                if (!o.is_string()) {
                    issues.push_back("config.outputs entries must be strings");
                    continue;
                }
                const std::string name = o.get<std::string>();
                if (auto kind = output_kind_from_string(name)) {
                    req.outputs.push_back(*kind);
                } else {
                    issues.push_back("config.outputs entry \"" + name +
                                     "\" is not recognized; valid outputs: " +
                                     quoted_list({"grid_csv", "heatmap_pgm",
                                                  "summary_json"}));
                }
            }
        }
    }
    if (root.contains("time_offsets_s")) {
        const json& arr = root.at("time_offsets_s");
        if (!arr.is_array()) {
            issues.push_back("config.time_offsets_s must be an array of numbers");
        } else {
            for (const auto& t : arr) {
                if (!t.is_number()) {
                    issues.push_back("config.time_offsets_s entries must be numbers");
                    break;
                }
                req.time_offsets_s.push_back(t.get<double>());
            }
        }
    }
    if (root.contains("metrics")) {
        const json& m = root.at("metrics");
        if (!m.is_object()) {
            issues.push_back("config.metrics must be an object");
        } else {
            Section ms(m, "metrics", issues);
            req.metrics.fringe = ms.boolean("fringe", false);
            if (ms.has("spot_threshold_db")) {
                req.metrics.spot_threshold_db = ms.finite("spot_threshold_db", 0.0);
            }
            if (ms.has("beamwidth_deg")) {
                const double bw = ms.positive("beamwidth_deg", 2.5);
                if (bw >= 180.0) {
                    ms.complain("beamwidth_deg", "must be below 180 degrees");
                } else {
                    req.metrics.beamwidth_rad = bw * deg;
                }
            }
        }
    }
    if (root.contains("doppler")) {
        const json& d = root.at("doppler");
        if (!d.is_object()) {
            issues.push_back("config.doppler must be an object");
        } else {
            Section ds(d, "doppler", issues);
            DopplerRequest dop;
            const double carrier_hz = ds.positive("carrier_ghz", 3.5) * 1.0e9;
            dop.sweep.carrier_hz = carrier_hz;
            dop.pass.carrier_hz = carrier_hz;
            dop.pass.altitude_km = ds.positive("altitude_km", dop.pass.altitude_km);
            const double elev_deg = ds.number("max_elevation_deg", 90.0);
            if (!(std::isfinite(elev_deg) && elev_deg > 0.0 && elev_deg <= 90.0 + 1e-9)) {
                ds.complain("max_elevation_deg", "must be in (0, 90] degrees");
            } else {
                dop.pass.max_elevation_rad = std::min(elev_deg * deg, constants::pi / 2.0);
            }
            dop.sweep.window_cycles = ds.positive("window_cycles", dop.sweep.window_cycles);
            dop.sweep.df_min_hz = ds.finite("df_min_hz", dop.sweep.df_min_hz);
            dop.sweep.df_max_hz = ds.finite("df_max_hz", dop.sweep.df_max_hz);
            dop.sweep.df_step_hz = ds.positive("df_step_hz", dop.sweep.df_step_hz);
            dop.sweep.steps_per_cycle =
                ds.integer("steps_per_cycle", dop.sweep.steps_per_cycle);
            req.doppler = dop;
        }
    }
    if (root.contains("budget")) {
        const json& b = root.at("budget");
        if (!b.is_object()) {
            issues.push_back("config.budget must be an object");
        } else {
            Section bs(b, "budget", issues);
            linkbudget::LinkBudgetConfig cfg;
            cfg.distance_km = bs.positive("distance_km", cfg.distance_km);
            cfg.frequency_hz = bs.positive("frequency_ghz", cfg.frequency_hz / 1.0e9) * 1.0e9;
            cfg.eirp_dbw = bs.finite("eirp_dbw", cfg.eirp_dbw);
            cfg.tx_antenna_gain_dbi = bs.finite("tx_antenna_gain_dbi", cfg.tx_antenna_gain_dbi);
            cfg.rx_antenna_gain_dbi = bs.finite("rx_antenna_gain_dbi", cfg.rx_antenna_gain_dbi);
            cfg.atmospheric_loss_db = bs.finite("atmospheric_loss_db", cfg.atmospheric_loss_db);
            cfg.tx_loss_db = bs.finite("tx_loss_db", cfg.tx_loss_db);
            cfg.rx_loss_db = bs.finite("rx_loss_db", cfg.rx_loss_db);
            cfg.sensitivity_dbm = bs.finite("sensitivity_dbm", cfg.sensitivity_dbm);
            req.budget = cfg;
        }
    }
    req.out_dir = top.text("out_dir", "out");
    if (root.contains("out_dir") && req.out_dir.empty()) {
        issues.push_back("out_dir must not be empty");
    }

    if (!issues.empty()) throw validation_error(std::move(issues));

    // ---- assemble the scenario --------------------------------------------
    if (case_id == coverage::CaseId::custom) {
        coverage::ScenarioConfig cfg;
        cfg.case_id = coverage::CaseId::custom;
        cfg.satellites = std::move(custom_sats);
        cfg.intersect_angle_rad = params.intersect_angle_rad;
        cfg.grid_side_m = params.grid_side_m;
        cfg.grid_resolution = params.grid_resolution;
        cfg.wavelength_m = constants::speed_of_light_m_s / params.frequency_hz;
        cfg.reference_amplitude = params.amplitude_at_receiver;
        req.scenario = cfg;
    } else {
        req.scenario = coverage::build_scenario(case_id, params);
    }
    req.scenario.cutoff_db = cutoff;

    validate(req);
    return req;
}

RunRequest load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        throw validation_error("config file not readable: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string emit_request_json(const RunRequest& req) {
    ordered_json j;

    ordered_json scen;
    scen["case"] = coverage::to_string(req.scenario.case_id);
    const auto& sats = req.scenario.satellites;
    if (req.scenario.case_id == coverage::CaseId::custom) {
        ordered_json arr = ordered_json::array();
        for (const auto& s : sats) arr.push_back(satellite_json(s));
        scen["satellites"] = arr;
    } else if (!sats.empty()) {
        scen["altitude_km"] = sats[0].altitude_km;
        if (sats.size() > 1) {
            const double half = geometry::incidence_theta_rad(sats[0].polar_angle_rad,
                                                              sats[0].altitude_km);
            scen["separation_deg"] = 2.0 * half / deg;
        }
    }
    scen["frequency_ghz"] =
        constants::speed_of_light_m_s / req.scenario.wavelength_m / 1.0e9;
    scen["intersect_angle_deg"] = req.scenario.intersect_angle_rad / deg;
    scen["amplitude_at_receiver"] = req.scenario.reference_amplitude;
    scen["grid_resolution"] = req.scenario.grid_resolution;
    scen["grid_side_m"] = req.scenario.grid_side_m;
    if (req.scenario.cutoff_db) scen["cutoff_db"] = *req.scenario.cutoff_db;
    if (req.scenario.case_id != coverage::CaseId::custom && !sats.empty()) {
        // Informational echo of the placed constellation; ignored on parse.
        ordered_json arr = ordered_json::array();
        for (const auto& s : sats) arr.push_back(satellite_json(s));
        scen["satellites_resolved"] = arr;
    }
    j["scenario"] = scen;

    j["compute_map"] = req.compute_map;
    ordered_json outs = ordered_json::array();
    for (OutputKind k : req.outputs) outs.push_back(to_string(k));
    j["outputs"] = outs;
    if (!req.time_offsets_s.empty()) j["time_offsets_s"] = req.time_offsets_s;

    ordered_json met;
    met["fringe"] = req.metrics.fringe;
    if (req.metrics.spot_threshold_db) {
        met["spot_threshold_db"] = *req.metrics.spot_threshold_db;
    }
    if (req.metrics.beamwidth_rad) {
        met["beamwidth_deg"] = *req.metrics.beamwidth_rad / deg;
    }
    j["metrics"] = met;

    if (req.doppler) {
        ordered_json d;
        d["carrier_ghz"] = req.doppler->sweep.carrier_hz / 1.0e9;
        d["altitude_km"] = req.doppler->pass.altitude_km;
        d["max_elevation_deg"] = req.doppler->pass.max_elevation_rad / deg;
        d["window_cycles"] = req.doppler->sweep.window_cycles;
        d["df_min_hz"] = req.doppler->sweep.df_min_hz;
        d["df_max_hz"] = req.doppler->sweep.df_max_hz;
        d["df_step_hz"] = req.doppler->sweep.df_step_hz;
        d["steps_per_cycle"] = req.doppler->sweep.steps_per_cycle;
        j["doppler"] = d;
    }
    if (req.budget) {
        ordered_json b;
        b["distance_km"] = req.budget->distance_km;
        b["frequency_ghz"] = req.budget->frequency_hz / 1.0e9;
        b["eirp_dbw"] = req.budget->eirp_dbw;
        b["tx_antenna_gain_dbi"] = req.budget->tx_antenna_gain_dbi;
        b["rx_antenna_gain_dbi"] = req.budget->rx_antenna_gain_dbi;
        b["atmospheric_loss_db"] = req.budget->atmospheric_loss_db;
        b["tx_loss_db"] = req.budget->tx_loss_db;
        b["rx_loss_db"] = req.budget->rx_loss_db;
        b["sensitivity_dbm"] = req.budget->sensitivity_dbm;
        j["budget"] = b;
    }
    j["out_dir"] = req.out_dir;
    return j.dump(2) + "\n";
}

RunRequest preset(const std::string& name) {
    const auto id = coverage::case_from_string(name);
    if (!id || *id == coverage::CaseId::custom) {
        throw validation_error("\"" + name + "\" is not a preset; valid presets: " +
                               quoted_list(preset_names()));
    }
    RunRequest req;
    req.scenario = coverage::build_scenario(*id, {});
    switch (*id) {
    case coverage::CaseId::two_parallel:
        req.metrics.fringe = true;
        break;
    case coverage::CaseId::four_parallel:
    case coverage::CaseId::four_perpendicular:
    case coverage::CaseId::four_intersecting:
        req.metrics.spot_threshold_db = 6.0;
        break;
    case coverage::CaseId::single:
        req.metrics.beamwidth_rad = 2.5 * deg;
        break;
    default:
        break;
    }
    req.budget = linkbudget::LinkBudgetConfig{};
    return req;
}

std::vector<std::string> preset_names() {
    return {"single",        "two_parallel",       "two_perpendicular",
            "four_parallel", "four_perpendicular", "four_intersecting"};
}

} // namespace leobeam::io
