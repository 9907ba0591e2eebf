#include "leobeam/geometry.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "leobeam/errors.hpp"

namespace leobeam::geometry {

namespace {
constexpr double pi = constants::pi;
constexpr double two_pi = 2.0 * constants::pi;

double clamp_unit(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

void check_polar_altitude(double polar_angle_rad, double altitude_km,
                          std::vector<std::string>& issues) {
    if (!(polar_angle_rad >= 0.0 && polar_angle_rad < 0.5 * pi)) {
        issues.push_back("polar angle must lie in [0, pi/2), got " +
                         std::to_string(polar_angle_rad));
    }
    if (!(altitude_km > 0.0)) {
        issues.push_back("altitude_km must be > 0, got " + std::to_string(altitude_km));
    }
}
} // namespace

double wrap_two_pi(double angle_rad) {
    double r = std::fmod(angle_rad, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

void validate(const SatelliteBeamSpec& sat) {
    std::vector<std::string> issues;
    check_polar_altitude(sat.polar_angle_rad, sat.altitude_km, issues);
    if (std::abs(norm(sat.heading_unit) - 1.0) > 1e-12) {
        issues.push_back("heading_unit must have unit norm within 1e-12, got |h| = " +
                         std::to_string(norm(sat.heading_unit)));
    }
    if (!(sat.amplitude_at_receiver > 0.0)) {
        issues.push_back("amplitude_at_receiver must be > 0, got " +
                         std::to_string(sat.amplitude_at_receiver));
    }
    if (!std::isfinite(sat.initial_phase_rad)) {
        issues.push_back("initial_phase_rad must be finite");
    }
    if (!std::isfinite(sat.azimuth_rad)) {
        issues.push_back("azimuth_rad must be finite");
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

double slant_range_km(double polar_angle_rad, double altitude_km, const EarthModel& earth) {
    std::vector<std::string> issues;
    check_polar_altitude(polar_angle_rad, altitude_km, issues);
    if (!issues.empty()) throw validation_error(std::move(issues));
    // Law of cosines rearranged as h^2 + 4*re*ra*sin^2(a/2): no cancellation,
    // and exactly h at a == 0.
    const double re = earth.radius_km;
    const double ra = re + altitude_km;
    const double s = std::sin(0.5 * polar_angle_rad);
    return std::sqrt(altitude_km * altitude_km + 4.0 * re * ra * s * s);
}

double incidence_theta_rad(double polar_angle_rad, double altitude_km,
                           const EarthModel& earth) {
    const double range = slant_range_km(polar_angle_rad, altitude_km, earth);
    const double beta =
        std::asin(clamp_unit(earth.radius_km * std::sin(polar_angle_rad) / range));
    return polar_angle_rad + beta;
}

double polar_angle_for_incidence_rad(double incidence_theta, double altitude_km,
                                     const EarthModel& earth) {
    std::vector<std::string> issues;
    if (!(incidence_theta >= 0.0 && incidence_theta < 0.5 * pi)) {
        issues.push_back("incidence angle must lie in [0, pi/2), got " +
                         std::to_string(incidence_theta));
    }
    if (!(altitude_km > 0.0)) {
        issues.push_back("altitude_km must be > 0, got " + std::to_string(altitude_km));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
    const double ratio = earth.radius_km / (earth.radius_km + altitude_km);
    return incidence_theta - std::asin(clamp_unit(ratio * std::sin(incidence_theta)));
}

double path_phase_difference_rad(double range1_m, double range2_m, double wavelength_m) {
    if (!(wavelength_m > 0.0)) {
        throw validation_error("wavelength_m must be > 0, got " +
                               std::to_string(wavelength_m));
    }
    return std::abs(range1_m - range2_m) * two_pi / wavelength_m;
}

Vec3 satellite_position_m(const SatelliteBeamSpec& sat, const EarthModel& earth) {
    validate(sat);
    const double re_m = earth.radius_km * 1000.0;
    const double rho_m = (earth.radius_km + sat.altitude_km) * 1000.0;
    const double sa = std::sin(sat.polar_angle_rad);
    const double ca = std::cos(sat.polar_angle_rad);
    return {rho_m * sa * std::cos(sat.azimuth_rad), rho_m * sa * std::sin(sat.azimuth_rad),
            rho_m * ca - re_m};
}

std::pair<Vec3, Vec3> polarization_basis(const Vec3& heading_unit,
                                         const Vec3& propagation_unit) {
    std::vector<std::string> issues;
    if (std::abs(norm(heading_unit) - 1.0) > 1e-6) {
        issues.push_back("heading must be unit-norm, got |h| = " +
                         std::to_string(norm(heading_unit)));
    }
    if (std::abs(norm(propagation_unit) - 1.0) > 1e-6) {
        issues.push_back("propagation must be unit-norm, got |k| = " +
                         std::to_string(norm(propagation_unit)));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
    if (norm(cross(heading_unit, propagation_unit)) < 1e-9) {
        throw validation_error(
            "heading and propagation are collinear; transverse polarization is undefined");
    }
    const Vec3 e =
        normalized(heading_unit - dot(heading_unit, propagation_unit) * propagation_unit);
    const Vec3 h = normalized(cross(propagation_unit, e));
    return {e, h};
}

BeamAtPoint beam_at_point(const SatelliteBeamSpec& sat, const GroundPoint& point,
                          double wavelength_m, const EarthModel& earth) {
    if (!(wavelength_m > 0.0)) {
        throw validation_error("wavelength_m must be > 0, got " +
                               std::to_string(wavelength_m));
    }
    const Vec3 sp = satellite_position_m(sat, earth);
    const Vec3 ground{point.x_m, point.y_m, 0.0};
    const Vec3 d = ground - sp;
    const double range_m = norm(d);
    const Vec3 k = d / range_m;
    if (!(-k.z > 0.0)) {
        throw computation_error("ray arrives at or below the horizon at (" +
                                std::to_string(point.x_m) + ", " +
                                std::to_string(point.y_m) + ") m");
    }
    BeamAtPoint out;
    out.propagation_unit = k;
    out.path_length_m = range_m;
    auto [e, h] = polarization_basis(sat.heading_unit, k);
    out.e_pol_unit = e;
    out.h_pol_unit = h;
    // Wrap the two contributions separately: the path term is ~1e7 rad, and a
    // single subtraction at that magnitude would cost ~1e-8 rad of the result.
    out.arrival_phase_rad = wrap_two_pi(wrap_two_pi(sat.initial_phase_rad) -
                                        wrap_two_pi(two_pi * range_m / wavelength_m));
    out.incidence_theta_rad = std::acos(clamp_unit(-k.z));
    return out;
}

} // namespace leobeam::geometry
