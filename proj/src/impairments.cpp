#include "leobeam/impairments.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"

namespace leobeam::impairments {

namespace {
constexpr double pi = constants::pi;
constexpr double two_pi = 2.0 * constants::pi;

double clamp_unit(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }
} // namespace

void validate(const DopplerPassConfig& cfg) {
    std::vector<std::string> issues;
    if (!(cfg.carrier_hz > 0.0)) {
        issues.push_back("carrier_hz must be > 0, got " + std::to_string(cfg.carrier_hz));
    }
    if (!(cfg.altitude_km > 0.0)) {
        issues.push_back("altitude_km must be > 0, got " + std::to_string(cfg.altitude_km));
    }
    if (!(cfg.max_elevation_rad > 0.0 && cfg.max_elevation_rad <= 0.5 * pi)) {
        issues.push_back("max_elevation_rad must lie in (0, pi/2], got " +
                         std::to_string(cfg.max_elevation_rad));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

double relative_angular_rate_rad_s(const DopplerPassConfig& cfg) {
    validate(cfg);
    const double r = cfg.earth.radius_km + cfg.altitude_km;
    // Counter-rotating equatorial pass: orbital rate and Earth rotation add,
    // the upper envelope of the shift over all pass geometries.
    return std::sqrt(cfg.earth.gravitational_parameter_km3_s2 / (r * r * r)) +
           cfg.earth.rotation_rate_rad_s;
}

double cross_track_central_angle_rad(const DopplerPassConfig& cfg) {
    validate(cfg);
    const double r = cfg.earth.radius_km + cfg.altitude_km;
    const double elev = cfg.max_elevation_rad;
    return std::acos(clamp_unit(cfg.earth.radius_km / r * std::cos(elev))) - elev;
}

double visible_arc_half_angle_rad(const DopplerPassConfig& cfg) {
    const double psi_min = cross_track_central_angle_rad(cfg);
    const double r = cfg.earth.radius_km + cfg.altitude_km;
    // cos(total geocentric angle) = cos(cross-track) * cos(along-track);
    // the horizon sits at cos(total) = re / r.
    return std::acos(clamp_unit(cfg.earth.radius_km / r / std::cos(psi_min)));
}

double normalized_doppler(const DopplerPassConfig& cfg, double along_track_rad) {
    validate(cfg);
    if (!(std::abs(along_track_rad) < 0.5 * pi)) {
        throw validation_error("along-track offset " + std::to_string(along_track_rad) +
                               " rad is outside any overhead pass (|offset| < pi/2)");
    }
    const double re_m = cfg.earth.radius_km * 1000.0;
    const double r_m = (cfg.earth.radius_km + cfg.altitude_km) * 1000.0;
    const double cpsi = std::cos(cross_track_central_angle_rad(cfg));
    const double d_m = std::sqrt(re_m * re_m + r_m * r_m -
                                 2.0 * re_m * r_m * cpsi * std::cos(along_track_rad));
    const double omega = relative_angular_rate_rad_s(cfg);
    // Range rate of a circular ground track: the shift is -(d distance/dt)/c.
    return -(re_m * r_m * cpsi * std::sin(along_track_rad) * omega) /
           (constants::speed_of_light_m_s * d_m);
}

double max_abs_doppler_hz(const DopplerPassConfig& cfg) {
    // |shift| grows monotonically from culmination to the horizon for any
    // LEO geometry, so the arc edge is the maximum.
    const double edge = visible_arc_half_angle_rad(cfg);
    return std::abs(normalized_doppler(cfg, edge)) * cfg.carrier_hz;
}

void validate(const DopplerSweepConfig& cfg) {
    std::vector<std::string> issues;
    if (!(cfg.carrier_hz > 0.0)) {
        issues.push_back("carrier_hz must be > 0, got " + std::to_string(cfg.carrier_hz));
    }
    if (!(cfg.window_cycles >= 1.0)) {
        issues.push_back("window_cycles must be >= 1, got " +
                         std::to_string(cfg.window_cycles));
    }
    if (!(cfg.df_step_hz > 0.0)) {
        issues.push_back("df_step_hz must be > 0, got " + std::to_string(cfg.df_step_hz));
    }
    if (!(cfg.df_min_hz <= cfg.df_max_hz)) {
        issues.push_back("df_min_hz must be <= df_max_hz, got [" +
                         std::to_string(cfg.df_min_hz) + ", " +
                         std::to_string(cfg.df_max_hz) + "]");
    }
    if (cfg.steps_per_cycle < 64) {
        issues.push_back("steps_per_cycle must be >= 64, got " +
                         std::to_string(cfg.steps_per_cycle));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

namespace {
// Co-located zenith beam with explicit arrival phase; the sweep needs the two
// tones to start in phase at the receiver, so the geometry pipeline (which
// would add wavelength-dependent path phases) is bypassed.
fields::PlaneWave zenith_wave(double amplitude, double frequency_hz) {
    fields::PlaneWave w;
    w.beam.propagation_unit = {0.0, 0.0, -1.0};
    w.beam.e_pol_unit = {0.0, -1.0, 0.0};
    w.beam.h_pol_unit = {-1.0, 0.0, 0.0};
    w.beam.path_length_m = 0.0;
    w.beam.arrival_phase_rad = 0.0;
    w.beam.incidence_theta_rad = 0.0;
    w.amplitude = amplitude;
    w.angular_frequency_rad_s = two_pi * frequency_hz;
    return w;
}
} // namespace

std::vector<SweepPoint> doppler_enhancement_sweep(const DopplerSweepConfig& cfg) {
    validate(cfg);
    const double amplitude = std::sqrt(2.0);
    const double window_s = cfg.window_cycles / cfg.carrier_hz;

    fields::PlaneWaveSet ref_set;
    ref_set.reference_amplitude = amplitude;
    ref_set.waves.push_back(zenith_wave(amplitude, cfg.carrier_hz));
    const double ref_power =
        fields::time_avg_poynting(ref_set, 1.0 / cfg.carrier_hz, cfg.steps_per_cycle)
            .magnitude;

    const auto count = static_cast<std::int64_t>(
                           std::floor((cfg.df_max_hz - cfg.df_min_hz) / cfg.df_step_hz +
                                      1e-9)) +
                       1;
    std::vector<SweepPoint> out(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        const double df = cfg.df_min_hz + static_cast<double>(i) * cfg.df_step_hz;
        fields::PlaneWaveSet set;
        set.reference_amplitude = amplitude;
        set.waves.push_back(zenith_wave(amplitude, cfg.carrier_hz));
        set.waves.push_back(zenith_wave(amplitude, cfg.carrier_hz + df));
        const double f_max = std::max(cfg.carrier_hz, cfg.carrier_hz + df);
        const auto steps =
            cfg.steps_per_cycle *
            static_cast<std::int64_t>(std::ceil(window_s * f_max - 1e-6));
        const auto avg = fields::time_avg_poynting(set, window_s, steps);
        out[static_cast<std::size_t>(i)] = {df,
                                            fields::power_ratio_db(avg.magnitude, ref_power)};
    }
    return out;
}

fields::PlaneWaveSet apply_time_offsets(fields::PlaneWaveSet set,
                                        const std::vector<double>& offsets_s) {
    fields::validate(set);
    if (offsets_s.size() != set.waves.size()) {
        throw validation_error("offsets list has " + std::to_string(offsets_s.size()) +
                               " entries but the wave set has " +
                               std::to_string(set.waves.size()));
    }
    for (std::size_t m = 0; m < set.waves.size(); ++m) {
        if (!std::isfinite(offsets_s[m])) {
            throw validation_error("offset " + std::to_string(m) + " is not finite");
        }
        if (offsets_s[m] == 0.0) continue;
        auto& w = set.waves[m];
        // Work in carrier cycles so whole-period offsets shift the phase by
        // exactly zero: only the fractional part of f * offset matters.
        const double cycles = w.angular_frequency_rad_s / two_pi * offsets_s[m];
        const double frac = cycles - std::round(cycles);
        w.beam.arrival_phase_rad =
            geometry::wrap_two_pi(w.beam.arrival_phase_rad - two_pi * frac);
    }
    return set;
}

} // namespace leobeam::impairments
