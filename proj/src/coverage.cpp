#include "leobeam/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"
#include "leobeam/fields.hpp"
#include "leobeam/impairments.hpp"

namespace leobeam::coverage {

namespace {
constexpr double pi = constants::pi;
constexpr double two_pi = 2.0 * constants::pi;
} // namespace

const char* to_string(CaseId id) {
    switch (id) {
    case CaseId::single: return "single";
    case CaseId::two_parallel: return "two_parallel";
    case CaseId::two_perpendicular: return "two_perpendicular";
    case CaseId::four_parallel: return "four_parallel";
    case CaseId::four_perpendicular: return "four_perpendicular";
    case CaseId::four_intersecting: return "four_intersecting";
    case CaseId::custom: return "custom";
    }
    return "unknown";
}

std::optional<CaseId> case_from_string(const std::string& name) {
    for (CaseId id : {CaseId::single, CaseId::two_parallel, CaseId::two_perpendicular,
                      CaseId::four_parallel, CaseId::four_perpendicular,
                      CaseId::four_intersecting, CaseId::custom}) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

namespace {
std::size_t expected_satellite_count(CaseId id) {
    switch (id) {
    case CaseId::single: return 1;
    case CaseId::two_parallel:
    case CaseId::two_perpendicular: return 2;
    case CaseId::four_parallel:
    case CaseId::four_perpendicular:
    case CaseId::four_intersecting: return 4;
    case CaseId::custom: return 0; // any non-zero count
    }
    return 0;
}
} // namespace

void validate(const ScenarioConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.satellites.empty()) issues.push_back("scenario has no satellites");
    const std::size_t expected = expected_satellite_count(cfg.case_id);
    if (expected != 0 && cfg.satellites.size() != expected) {
        issues.push_back(std::string("case ") + to_string(cfg.case_id) + " needs " +
                         std::to_string(expected) + " satellites, got " +
                         std::to_string(cfg.satellites.size()));
    }
    for (std::size_t m = 0; m < cfg.satellites.size(); ++m) {
        try {
            geometry::validate(cfg.satellites[m]);
        } catch (const validation_error& e) {
            for (const auto& issue : e.issues()) {
                issues.push_back("satellite " + std::to_string(m) + ": " + issue);
            }
        }
    }
    if (cfg.case_id == CaseId::four_intersecting &&
        !(cfg.intersect_angle_rad >= 0.0 && cfg.intersect_angle_rad <= 0.5 * pi)) {
        issues.push_back("intersect_angle_rad must lie in [0, pi/2], got " +
                         std::to_string(cfg.intersect_angle_rad));
    }
    if (!(cfg.grid_side_m > 0.0)) {
        issues.push_back("grid_side_m must be > 0, got " + std::to_string(cfg.grid_side_m));
    }
    if (cfg.grid_resolution < 2) {
        issues.push_back("grid_resolution must be >= 2, got " +
                         std::to_string(cfg.grid_resolution));
    }
    if (!(cfg.wavelength_m > 0.0)) {
        issues.push_back("wavelength_m must be > 0, got " +
                         std::to_string(cfg.wavelength_m));
    }
    if (!(cfg.reference_amplitude > 0.0)) {
        issues.push_back("reference_amplitude must be > 0, got " +
                         std::to_string(cfg.reference_amplitude));
    }
    if (cfg.cutoff_db && !std::isfinite(*cfg.cutoff_db)) {
        issues.push_back("cutoff_db must be finite");
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

ScenarioConfig build_scenario(CaseId id, const ScenarioParams& params) {
    std::vector<std::string> issues;
    if (id == CaseId::custom) {
        issues.push_back("custom scenarios need an explicit satellite list");
    }
    if (!(params.altitude_km > 0.0)) {
        issues.push_back("altitude_km must be > 0, got " +
                         std::to_string(params.altitude_km));
    }
    if (!(params.separation_rad > 0.0 && params.separation_rad < pi)) {
        issues.push_back("separation_rad must lie in (0, pi), got " +
                         std::to_string(params.separation_rad));
    }
    if (!(params.frequency_hz > 0.0)) {
        issues.push_back("frequency_hz must be > 0, got " +
                         std::to_string(params.frequency_hz));
    }
    if (!(params.intersect_angle_rad >= 0.0 && params.intersect_angle_rad <= 0.5 * pi)) {
        issues.push_back("intersect_angle_rad must lie in [0, pi/2], got " +
                         std::to_string(params.intersect_angle_rad));
    }
    if (!(params.amplitude_at_receiver > 0.0)) {
        issues.push_back("amplitude_at_receiver must be > 0, got " +
                         std::to_string(params.amplitude_at_receiver));
    }
    if (params.grid_resolution < 2) {
        issues.push_back("grid_resolution must be >= 2, got " +
                         std::to_string(params.grid_resolution));
    }
    if (!(params.grid_side_m > 0.0)) {
        issues.push_back("grid_side_m must be > 0, got " +
                         std::to_string(params.grid_side_m));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));

    ScenarioConfig cfg;
    cfg.case_id = id;
    cfg.intersect_angle_rad = params.intersect_angle_rad;
    cfg.grid_side_m = params.grid_side_m;
    cfg.grid_resolution = params.grid_resolution;
    cfg.wavelength_m = constants::speed_of_light_m_s / params.frequency_hz;
    cfg.reference_amplitude = params.amplitude_at_receiver;

    // Each satellite sits half the separation from zenith, so a diametrically
    // opposite pair's arrival directions are the full separation apart.
    const double polar = id == CaseId::single
                             ? 0.0
                             : geometry::polar_angle_for_incidence_rad(
                                   0.5 * params.separation_rad, params.altitude_km);
    const Vec3 along_y{0.0, -1.0, 0.0};
    const Vec3 along_x{-1.0, 0.0, 0.0};
    auto add = [&](double azimuth_rad, const Vec3& heading) {
        geometry::SatelliteBeamSpec sat;
        sat.altitude_km = params.altitude_km;
        sat.polar_angle_rad = polar;
        sat.azimuth_rad = azimuth_rad;
        sat.heading_unit = heading;
        sat.amplitude_at_receiver = params.amplitude_at_receiver;
        cfg.satellites.push_back(sat);
    };

    switch (id) {
    case CaseId::single:
        add(0.0, along_y);
        break;
    case CaseId::two_parallel:
        add(0.5 * pi, along_y);
        add(-0.5 * pi, along_y);
        break;
    case CaseId::two_perpendicular:
        add(0.5 * pi, along_y);
        add(0.0, along_x);
        break;
    case CaseId::four_parallel:
        // Diagonal azimuths keep the pattern's repeat lobes off the default
        // grid axes while preserving two mirror symmetries.
        add(0.25 * pi, along_y);
        add(0.75 * pi, along_y);
        add(1.25 * pi, along_y);
        add(1.75 * pi, along_y);
        break;
    case CaseId::four_perpendicular:
        add(0.5 * pi, along_y);
        add(1.5 * pi, along_y);
        add(0.0, along_x);
        add(pi, along_x);
        break;
    case CaseId::four_intersecting: {
        const double xi = params.intersect_angle_rad;
        const Vec3 heading_b{std::sin(xi), -std::cos(xi), 0.0};
        add(0.5 * pi, along_y);
        add(1.5 * pi, along_y);
        add(0.5 * pi + xi, heading_b);
        add(1.5 * pi + xi, heading_b);
        break;
    }
    case CaseId::custom:
        break; // unreachable, rejected above
    }
    validate(cfg);
    return cfg;
}

double scenario_bound_ratio(const ScenarioConfig& cfg) {
    const int n = static_cast<int>(cfg.satellites.size());
    switch (cfg.case_id) {
    case CaseId::single: return 1.0;
    case CaseId::two_parallel: return fields::closed_form_parallel_max(2);
    case CaseId::two_perpendicular: return fields::closed_form_perpendicular_max(2);
    case CaseId::four_parallel: return fields::closed_form_parallel_max(4);
    case CaseId::four_perpendicular: return fields::closed_form_perpendicular_max(4);
    case CaseId::four_intersecting:
        return fields::closed_form_intersecting_max(4, 2, cfg.intersect_angle_rad);
    case CaseId::custom: return fields::closed_form_parallel_max(n);
    }
    return static_cast<double>(n) * n;
}

namespace {
EnhancementMap compute_map(const ScenarioConfig& cfg, const std::vector<double>& offsets_s,
                           bool parallel) {
    validate(cfg);
    if (!offsets_s.empty() && offsets_s.size() != cfg.satellites.size()) {
        throw validation_error("time offsets list has " + std::to_string(offsets_s.size()) +
                               " entries but the scenario has " +
                               std::to_string(cfg.satellites.size()) + " satellites");
    }
    for (double o : offsets_s) {
        if (!std::isfinite(o)) throw validation_error("time offsets must be finite");
    }
    const double frequency_hz = constants::speed_of_light_m_s / cfg.wavelength_m;
    const double omega = two_pi * frequency_hz;
    const double window_s = 1.0 / frequency_hz;
    constexpr std::int64_t steps = 256;

    // Reference: one satellite of the same class straight overhead.
    geometry::SatelliteBeamSpec ref_sat;
    ref_sat.altitude_km = cfg.satellites.front().altitude_km;
    ref_sat.polar_angle_rad = 0.0;
    ref_sat.azimuth_rad = 0.0;
    ref_sat.heading_unit = {0.0, -1.0, 0.0};
    ref_sat.amplitude_at_receiver = cfg.reference_amplitude;
    fields::PlaneWaveSet ref_set;
    ref_set.reference_amplitude = cfg.reference_amplitude;
    ref_set.waves.push_back({geometry::beam_at_point(ref_sat, {0.0, 0.0}, cfg.wavelength_m,
                                                     cfg.earth),
                             cfg.reference_amplitude, omega});
    const double ref_power =
        fields::time_avg_poynting(ref_set, window_s, steps).magnitude;

    // Visibility depends only on the satellite (the grid is tiny next to the
    // slant range), so one probe per satellite surfaces horizon errors before
    // the parallel region, which must not throw.
    for (const auto& sat : cfg.satellites) {
        (void)geometry::beam_at_point(sat, {0.0, 0.0}, cfg.wavelength_m, cfg.earth);
    }

    EnhancementMap map;
    map.resolution = cfg.grid_resolution;
    map.side_m = cfg.grid_side_m;
    map.bound_db = 10.0 * std::log10(scenario_bound_ratio(cfg));
    map.scenario = cfg;
    const int res = cfg.grid_resolution;
    map.values_db.assign(static_cast<std::size_t>(res) * res, 0.0);

    const double pitch = cfg.grid_side_m / (res - 1);
    const double half = 0.5 * cfg.grid_side_m;

#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < res; ++j) {
        fields::PlaneWaveSet set;
        set.reference_amplitude = cfg.reference_amplitude;
        for (int i = 0; i < res; ++i) {
            const geometry::GroundPoint p{-half + i * pitch, -half + j * pitch};
            set.waves.clear();
            for (const auto& sat : cfg.satellites) {
                set.waves.push_back({geometry::beam_at_point(sat, p, cfg.wavelength_m,
                                                             cfg.earth),
                                     sat.amplitude_at_receiver, omega});
            }
            if (!offsets_s.empty()) {
                set = impairments::apply_time_offsets(std::move(set), offsets_s);
            }
            const auto avg = fields::time_avg_poynting(set, window_s, steps);
            const double db = fields::power_ratio_db(avg.magnitude, ref_power);
            map.values_db[static_cast<std::size_t>(j) * res + i] =
                db < -60.0 ? -60.0 : db;
        }
    }

    map.max_db = *std::max_element(map.values_db.begin(), map.values_db.end());
    map.min_db = *std::min_element(map.values_db.begin(), map.values_db.end());
    return map;
}
} // namespace

EnhancementMap enhancement_map(const ScenarioConfig& cfg) {
    return compute_map(cfg, {}, true);
}

EnhancementMap enhancement_map_serial(const ScenarioConfig& cfg) {
    return compute_map(cfg, {}, false);
}

EnhancementMap misaligned_map(const ScenarioConfig& cfg,
                              const std::vector<double>& offsets_s) {
    return compute_map(cfg, offsets_s, true);
}

namespace {
// Least-squares fit of a + b*cos(2*pi*nu*s) + c*sin(2*pi*nu*s); returns the
// explained-variance fraction.
double sinusoid_fit_r2(const std::vector<double>& s, const std::vector<double>& y,
                       double nu) {
    const std::size_t n = s.size();
    double sc = 0, ss = 0, scc = 0, ssc = 0, sss = 0, sy = 0, syc = 0, sys = 0, syy = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double w = two_pi * nu * s[t];
        const double cv = std::cos(w), sv = std::sin(w);
        sc += cv;
        ss += sv;
        scc += cv * cv;
        ssc += sv * cv;
        sss += sv * sv;
        sy += y[t];
        syc += y[t] * cv;
        sys += y[t] * sv;
        syy += y[t] * y[t];
    }
    const double nn = static_cast<double>(n);
    // Normal equations for (a, b, c), solved by Cramer's rule.
    const double a11 = nn, a12 = sc, a13 = ss;
    const double a22 = scc, a23 = ssc, a33 = sss;
    const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    if (std::abs(det) < 1e-12 * nn) return 0.0;
    const double b1 = sy, b2 = syc, b3 = sys;
    const double a = (b1 * (a22 * a33 - a23 * a23) - a12 * (b2 * a33 - a23 * b3) +
                      a13 * (b2 * a23 - a22 * b3)) /
                     det;
    const double b = (a11 * (b2 * a33 - a23 * b3) - b1 * (a12 * a33 - a23 * a13) +
                      a13 * (a12 * b3 - b2 * a13)) /
                     det;
    const double c = (a11 * (a22 * b3 - b2 * ssc) - a12 * (a12 * b3 - b2 * a13) +
                      b1 * (a12 * a23 - a22 * a13)) /
                     det;
    const double sst = syy - sy * sy / nn;
    if (!(sst > 0.0)) return 0.0;
    const double sse = syy - (a * sy + b * syc + c * sys);
    return 1.0 - sse / sst;
}
} // namespace

FringeMetrics fringe_metrics(const EnhancementMap& map) {
    const int res = map.resolution;
    if (map.values_db.empty() || res < 9) {
        throw no_fringe_error("map too small for stripe statistics");
    }
    if (map.max_db - map.min_db < 0.1) {
        throw no_fringe_error("map is flat (dB range " +
                              std::to_string(map.max_db - map.min_db) +
                              "); no stripes to measure");
    }
    std::vector<double> lin(map.values_db.size());
    for (std::size_t t = 0; t < lin.size(); ++t) {
        lin[t] = std::pow(10.0, map.values_db[t] / 10.0);
    }
    auto at = [&](int i, int j) { return lin[static_cast<std::size_t>(j) * res + i]; };

    // Structure tensor of the pattern: its dominant axis is the stripe normal.
    double jxx = 0.0, jxy = 0.0, jyy = 0.0;
    for (int j = 1; j + 1 < res; ++j) {
        for (int i = 1; i + 1 < res; ++i) {
            const double gx = at(i + 1, j) - at(i - 1, j);
            const double gy = at(i, j + 1) - at(i, j - 1);
            jxx += gx * gx;
            jxy += gx * gy;
            jyy += gy * gy;
        }
    }
    const double phi_normal = 0.5 * std::atan2(2.0 * jxy, jxx - jyy);
    const double cn = std::cos(phi_normal), sn = std::sin(phi_normal);

    // Collapse the map onto the normal direction, binned at the grid pitch.
    const double pitch = map.pitch_m();
    const double half = 0.5 * map.side_m;
    const double s_min = -(std::abs(cn) + std::abs(sn)) * half;
    const auto bins = static_cast<std::size_t>(
                          std::lround(2.0 * (std::abs(cn) + std::abs(sn)) * half / pitch)) +
                      1;
    std::vector<double> bin_sum(bins, 0.0);
    std::vector<std::int64_t> bin_count(bins, 0);
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const double s = map.x_at(i) * cn + map.y_at(j) * sn;
            const auto b = static_cast<std::size_t>(std::lround((s - s_min) / pitch));
            bin_sum[std::min(b, bins - 1)] += at(i, j);
            bin_count[std::min(b, bins - 1)] += 1;
        }
    }
    std::vector<double> sb, yb;
    sb.reserve(bins);
    yb.reserve(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        if (bin_count[b] == 0) continue;
        sb.push_back(s_min + static_cast<double>(b) * pitch);
        yb.push_back(bin_sum[b] / static_cast<double>(bin_count[b]));
    }
    if (sb.size() < 16) throw no_fringe_error("too few profile samples for a period fit");
    const double span = sb.back() - sb.front();

    // Scan stripe frequencies between 1.5 periods per span and 8 samples per
    // period, then refine around the best candidate.
    const double nu_lo = 1.5 / span;
    const double nu_hi = 1.0 / (8.0 * pitch);
    if (!(nu_lo < nu_hi)) throw no_fringe_error("grid cannot resolve any stripe period");
    const double dnu = 1.0 / (8.0 * span);
    double best_nu = nu_lo, best_r2 = -1.0;
    for (double nu = nu_lo; nu <= nu_hi; nu += dnu) {
        const double r2 = sinusoid_fit_r2(sb, yb, nu);
        if (r2 > best_r2) {
            best_r2 = r2;
            best_nu = nu;
        }
    }
    double lo = std::max(nu_lo, best_nu - dnu), hi = std::min(nu_hi, best_nu + dnu);
    constexpr double golden = 0.6180339887498949;
    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
    double f1 = sinusoid_fit_r2(sb, yb, x1), f2 = sinusoid_fit_r2(sb, yb, x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = sinusoid_fit_r2(sb, yb, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = sinusoid_fit_r2(sb, yb, x1);
        }
    }
    const double nu_star = 0.5 * (lo + hi);
    const double r2_star = std::max(best_r2, sinusoid_fit_r2(sb, yb, nu_star));
    if (r2_star < 0.5) {
        throw no_fringe_error("no dominant stripe frequency (best fit explains " +
                              std::to_string(r2_star * 100.0) + "% of variance)");
    }

    FringeMetrics out;
    out.period_m = 1.0 / nu_star;
    out.bright_width_m = 0.5 * out.period_m;
    double orientation = phi_normal + 0.5 * pi;
    while (orientation >= pi) orientation -= pi;
    while (orientation < 0.0) orientation += pi;
    out.orientation_rad = orientation;
    out.fit_r2 = r2_star;
    return out;
}

SpotMetrics spot_metrics(const EnhancementMap& map, double threshold_db) {
    if (map.values_db.empty() || map.resolution < 2) {
        throw validation_error("map has no cells");
    }
    if (!std::isfinite(threshold_db)) {
        throw validation_error("threshold_db must be finite");
    }
    const int res = map.resolution;
    std::size_t peak_idx = 0;
    for (std::size_t t = 1; t < map.values_db.size(); ++t) {
        if (map.values_db[t] > map.values_db[peak_idx]) peak_idx = t;
    }
    SpotMetrics out;
    out.peak_db = map.values_db[peak_idx];
    if (out.peak_db < threshold_db) return out; // empty spot, area 0

    // Basin of the main lobe: walk outward from the peak, never ascending
    // (beyond rounding), never dropping below the threshold. Saddles at the
    // threshold level cannot leak into neighbouring repeat lobes because
    // re-entering them would require ascent.
    constexpr double ascent_tol_db = 1e-9;
    std::vector<char> in_spot(map.values_db.size(), 0);
    std::queue<std::size_t> frontier;
    in_spot[peak_idx] = 1;
    frontier.push(peak_idx);
    std::vector<std::size_t> members;
    while (!frontier.empty()) {
        const std::size_t t = frontier.front();
        frontier.pop();
        members.push_back(t);
        const int i = static_cast<int>(t % res);
        const int j = static_cast<int>(t / res);
        const double v = map.values_db[t];
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int ni = i + di[k], nj = j + dj[k];
            if (ni < 0 || ni >= res || nj < 0 || nj >= res) continue;
            const auto nt = static_cast<std::size_t>(nj) * res + ni;
            if (in_spot[nt]) continue;
            const double nv = map.values_db[nt];
            if (nv < threshold_db || nv > v + ascent_tol_db) continue;
            in_spot[nt] = 1;
            frontier.push(nt);
        }
    }

    const double cell = map.pitch_m();
    out.area_m2 = cell * cell * static_cast<double>(members.size());
    out.equivalent_radius_m = std::sqrt(out.area_m2 / pi);

    // Max pairwise extent via the convex hull of the member cell centres.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(members.size());
    for (std::size_t t : members) {
        pts.emplace_back(map.x_at(static_cast<int>(t % res)),
                         map.y_at(static_cast<int>(t / res)));
    }
    std::sort(pts.begin(), pts.end());
    auto cross2 = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                     const std::pair<double, double>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t h = 0;
    for (const auto& p : pts) {
        while (h >= 2 && cross2(hull[h - 2], hull[h - 1], p) <= 0.0) --h;
        hull[h++] = p;
    }
    const std::size_t lower = h + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (h >= lower && cross2(hull[h - 2], hull[h - 1], *it) <= 0.0) --h;
        hull[h++] = *it;
    }
    hull.resize(h > 0 ? h - 1 : 0);
    double best = 0.0;
    for (std::size_t a = 0; a < hull.size(); ++a) {
        for (std::size_t b = a + 1; b < hull.size(); ++b) {
            const double dx = hull[a].first - hull[b].first;
            const double dy = hull[a].second - hull[b].second;
            best = std::max(best, dx * dx + dy * dy);
        }
    }
    out.diagonal_m = std::sqrt(best);
    return out;
}

double single_sat_cell_radius_km(double beamwidth_rad, double altitude_km) {
    std::vector<std::string> issues;
    if (!(beamwidth_rad > 0.0 && beamwidth_rad < pi)) {
        issues.push_back("beamwidth_rad must lie in (0, pi), got " +
                         std::to_string(beamwidth_rad));
    }
    if (!(altitude_km > 0.0)) {
        issues.push_back("altitude_km must be > 0, got " + std::to_string(altitude_km));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
    return altitude_km * std::tan(0.5 * beamwidth_rad);
}

} // namespace leobeam::coverage
