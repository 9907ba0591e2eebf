#pragma once

namespace leobeam::constants {

inline constexpr double pi = 3.14159265358979323846;

// Exact by SI definition.
inline constexpr double speed_of_light_m_s = 2.99792458e8;

// Free-space wave impedance, rounded to the conventional engineering value.
inline constexpr double free_space_impedance_ohm = 376.730;

// Mean Earth radius.
inline constexpr double earth_radius_km = 6371.0;

// Geocentric gravitational parameter.
inline constexpr double earth_mu_km3_s2 = 398600.4418;

// Sidereal rotation rate.
inline constexpr double earth_rotation_rad_s = 7.2921159e-5;

} // namespace leobeam::constants
