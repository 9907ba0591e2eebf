#pragma once

#include <cstdint>
#include <vector>

#include "leobeam/geometry.hpp"
#include "leobeam/vec3.hpp"

namespace leobeam::fields {

// One monochromatic plane wave at the evaluation point.
struct PlaneWave {
    geometry::BeamAtPoint beam;
    double amplitude = 1.0;          // electric-field amplitude E_m > 0
    double angular_frequency_rad_s = 0.0; // omega_m > 0
};

// A superposition to evaluate, plus the single-beam reference amplitude the
// enhancement is measured against.
struct PlaneWaveSet {
    std::vector<PlaneWave> waves;
    double reference_amplitude = 1.0; // > 0
};

struct FieldSample {
    Vec3 e; // total electric field, V/m
    Vec3 h; // total magnetic field, A/m
};

// Time-averaged Poynting vector of a superposition.
struct PoyntingResult {
    Vec3 s_avg;                 // W/m^2
    double magnitude = 0.0;     // |s_avg|
    double window_s = 0.0;      // averaging window
    std::int64_t integration_steps = 0;
};

void validate(const PlaneWaveSet& set);

// Instantaneous total fields at time t. Each wave contributes
// amplitude * sin(omega t + arrival_phase) along its polarization axes, with
// the magnetic part scaled by the free-space impedance.
FieldSample instantaneous_fields(const PlaneWaveSet& set, double t_s);

// Composite-midpoint average of E x H over [0, window_s]. Requires at least
// 64 steps per carrier period contained in the window (checked against the
// highest frequency present). For equal-frequency waves and a whole number of
// periods the rule is exact to rounding.
PoyntingResult time_avg_poynting(const PlaneWaveSet& set, double window_s,
                                 std::int64_t steps);

// Convenience overload: window of one period of the highest frequency,
// 256 steps.
PoyntingResult time_avg_poynting(const PlaneWaveSet& set);

// Power ratio in dB, floored at nothing; throws validation_error when the
// reference power is not strictly positive.
double power_ratio_db(double power, double reference_power);

// Enhancement of a combined field over a single-beam reference, in dB.
double enhancement_db(const PoyntingResult& combined, const PoyntingResult& single_ref);

// Closed-form received-power enhancement bounds over a single satellite
// delivering the same per-satellite amplitude (power ratios, not dB).
// n satellites on co-planar parallel headings, coherently phased:
double closed_form_parallel_max(int n);
// n satellites split across two perpendicular headings (n even):
double closed_form_perpendicular_max(int n);
// n satellites with m of them on a second plane inclined xi radians:
double closed_form_intersecting_max(int n, int m, double xi_rad);
// Conventional single-link array of n elements (power scales linearly):
double miso_gain(int n);

// Magnitude of the two-element array factor |1 + exp(j(phase_offset +
// k d sin(theta) cos(phi)))| optionally scaled by an element pattern value.
double phased_array_response(double spacing_m, double phase_offset_rad,
                             double theta_rad, double phi_rad, double wavelength_m,
                             double element_gain = 1.0);

} // namespace leobeam::fields
