#pragma once

#include <cstdint>
#include <vector>

#include "leobeam/fields.hpp"
#include "leobeam/geometry.hpp"

namespace leobeam::impairments {

// A satellite pass over a receiver, for Doppler evaluation. The pass is the
// counter-rotating equatorial worst case: ground-track angular rate equals the
// orbital rate plus the Earth rotation rate.
struct DopplerPassConfig {
    double carrier_hz = 3.5e9;
    double altitude_km = 600.0;
    double max_elevation_rad = 1.5707963267948966; // pass culminates at zenith
    geometry::EarthModel earth{};
};

void validate(const DopplerPassConfig& cfg);

// Ground-track angular rate relative to the receiver (rad/s).
double relative_angular_rate_rad_s(const DopplerPassConfig& cfg);

// Geocentric cross-track offset of the pass implied by max_elevation.
double cross_track_central_angle_rad(const DopplerPassConfig& cfg);

// Half of the along-track central angle over which the satellite stays above
// the receiver's horizon.
double visible_arc_half_angle_rad(const DopplerPassConfig& cfg);

// Doppler shift divided by carrier frequency at along-track offset
// `along_track_rad` from the culmination point. Antisymmetric in the offset;
// zero at culmination. Throws validation_error when |offset| >= pi/2 (outside
// any pass). Magnitude never exceeds the satellite speed over c.
double normalized_doppler(const DopplerPassConfig& cfg, double along_track_rad);

// Largest |Doppler shift| over the visible arc, in Hz.
double max_abs_doppler_hz(const DopplerPassConfig& cfg);

// Residual-frequency sweep: two equal-amplitude beams arrive with zero initial
// phase difference, the second offset by df; the enhancement over one beam is
// averaged over `window_cycles` carrier cycles.
struct DopplerSweepConfig {
    double carrier_hz = 3.5e9;
    double window_cycles = 12000.0;
    double df_min_hz = 0.0;
    double df_max_hz = 4.0e6;
    double df_step_hz = 2.0e4;
    std::int64_t steps_per_cycle = 64;
};

struct SweepPoint {
    double df_hz = 0.0;
    double enhancement_db = 0.0;
};

void validate(const DopplerSweepConfig& cfg);

std::vector<SweepPoint> doppler_enhancement_sweep(const DopplerSweepConfig& cfg);

// Per-beam timing misalignment: each wave's arrival phase is advanced by
// -omega_m * offset_m (wrapped). Offsets list must match the wave count.
fields::PlaneWaveSet apply_time_offsets(fields::PlaneWaveSet set,
                                        const std::vector<double>& offsets_s);

} // namespace leobeam::impairments
