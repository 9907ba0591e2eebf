#pragma once

#include <utility>

#include "leobeam/constants.hpp"
#include "leobeam/vec3.hpp"

namespace leobeam::geometry {

struct EarthModel {
    double radius_km = constants::earth_radius_km;
    double gravitational_parameter_km3_s2 = constants::earth_mu_km3_s2;
    double rotation_rate_rad_s = constants::earth_rotation_rad_s;
};

// One transmitting satellite, placed on the sphere of its orbital altitude.
// Angles are measured from the receiver's zenith direction: polar_angle_rad is
// the geocentric angle between the receiver and the sub-satellite point,
// azimuth_rad the bearing of that point in the receiver's horizon plane.
struct SatelliteBeamSpec {
    double altitude_km = 0.0;
    double polar_angle_rad = 0.0;   // in [0, pi/2)
    double azimuth_rad = 0.0;
    Vec3 heading_unit{1.0, 0.0, 0.0}; // flight direction, |heading| == 1 within 1e-12
    double initial_phase_rad = 0.0;
    double amplitude_at_receiver = 1.0; // electric-field amplitude, > 0
};

struct GroundPoint {
    double x_m = 0.0;
    double y_m = 0.0;
};

// Everything needed to evaluate one satellite's plane wave at a ground point.
// (propagation_unit, e_pol_unit, h_pol_unit) is a right-handed orthonormal
// triad: e_pol x h_pol = propagation.
struct BeamAtPoint {
    Vec3 propagation_unit;
    double path_length_m = 0.0;
    Vec3 e_pol_unit;
    Vec3 h_pol_unit;
    double arrival_phase_rad = 0.0; // in [0, 2*pi)
    double incidence_theta_rad = 0.0;
};

// Reduce an angle to [0, 2*pi).
double wrap_two_pi(double angle_rad);

// Throws validation_error listing every violated field constraint.
void validate(const SatelliteBeamSpec& sat);

// Receiver-to-satellite distance for a satellite at geocentric offset
// `polar_angle_rad` and altitude `altitude_km` (law of cosines on the
// Earth-center triangle). polar_angle_rad must lie in [0, pi/2), altitude > 0.
double slant_range_km(double polar_angle_rad, double altitude_km,
                      const EarthModel& earth = {});

// Angle between the incoming ray and the receiver's zenith.
double incidence_theta_rad(double polar_angle_rad, double altitude_km,
                           const EarthModel& earth = {});

// Inverse of incidence_theta_rad in its first argument: the geocentric offset
// that makes the ray arrive at zenith angle theta.
double polar_angle_for_incidence_rad(double incidence_theta_rad, double altitude_km,
                                     const EarthModel& earth = {});

// |R1 - R2| expressed in radians of carrier phase (not wrapped).
double path_phase_difference_rad(double range1_m, double range2_m, double wavelength_m);

// Satellite position in the receiver-centred frame (receiver at origin,
// z toward zenith, Earth centre at (0, 0, -radius)). Metres.
Vec3 satellite_position_m(const SatelliteBeamSpec& sat, const EarthModel& earth = {});

// Transverse polarization frame for a beam travelling along `propagation_unit`
// from a transmitter whose flight direction is `heading_unit`: the electric
// axis is the heading with its along-ray component removed (Gram-Schmidt),
// the magnetic axis completes the right-handed triad. Both inputs unit-norm.
// Throws validation_error when heading and propagation are within 1e-9 of
// collinear (the transverse direction is undefined).
std::pair<Vec3, Vec3> polarization_basis(const Vec3& heading_unit,
                                         const Vec3& propagation_unit);

// Full beam description at a ground point. Throws validation_error on invalid
// satellite fields or non-positive wavelength, and computation_error when the
// ray would arrive at or below the receiver's horizon.
BeamAtPoint beam_at_point(const SatelliteBeamSpec& sat, const GroundPoint& point,
                          double wavelength_m, const EarthModel& earth = {});

} // namespace leobeam::geometry
