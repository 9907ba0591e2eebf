#pragma once

// Independent reference implementations and frozen expected values for the
// test suite. Everything here is derived from first principles (or computed
// once with 30-digit arithmetic and frozen), deliberately NOT reusing the
// library's code paths.

#include <cmath>
#include <vector>

#include "leobeam/fields.hpp"
#include "leobeam/vec3.hpp"

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// ---- frozen values (30-digit arithmetic) ----------------------------------

// Receiver-to-satellite distance, 5 deg geocentric offset, 600 km altitude.
inline constexpr double slant_range_5deg_600km_km = 835.466319401515202745;
// Zenith angle of arrival for the same geometry.
inline constexpr double incidence_5deg_600km_rad = 0.814254169690760538;
// 20*log10(4*pi*d*f/c) for 600 km at 3.5 GHz and 550 km at 2 GHz.
inline constexpr double fspl_600km_3p5ghz_db = 158.892169116561759168;
inline constexpr double fspl_550km_2ghz_db = 153.275636925047874623;
// Reference S-band budget: 66.7 dBm EIRP - FSPL - 5 - 2 - 2 + 0.
inline constexpr double received_600km_3p5ghz_dbm = -101.192169116561759168;
// Carrier wavelength at 3.5 GHz (exact decimal of c / 3.5e9).
inline constexpr double wavelength_3p5ghz_m = 0.085654988;
// Stripe period lambda / (2 sin(sep/2)) for 0.2 and 0.4 degree separations.
inline constexpr double fringe_period_0p2deg_m = 24.5383589912359989077;
inline constexpr double fringe_period_0p4deg_m = 12.2691981826707220696;
// Geocentric offset putting a 550 km satellite at a 0.1 deg zenith angle.
inline constexpr double polar_for_0p1deg_550km_rad = 1.38698446784274407685e-4;
// Straight-line distance between the two satellites it implies.
inline constexpr double sat_spacing_0p2deg_550km_km = 1.91986389423243979609;
// Worst-case Doppler (counter-rotating equatorial pass, horizon, 600 km).
inline constexpr double max_doppler_2ghz_600km_hz = 49203.8323978105322853;
inline constexpr double max_doppler_3p5ghz_600km_hz = 86106.7066961684314994;
inline constexpr double max_normalized_doppler_600km = 2.46019161989052661427e-5;
// Footprint radius altitude * tan(beamwidth/2), 2.5 deg beams.
inline constexpr double cell_radius_2p5deg_550km_km = 12.0010426921822112627;
inline constexpr double cell_radius_2p5deg_600km_km = 13.0920465732896850139;
// Zenith path stretch for a 1 m ground offset at 600 km range.
inline constexpr double path_diff_1m_600km_m = 8.33333333332754629673e-7;
// Decibel ladder.
inline constexpr double db_2 = 3.01029995663981195214;
inline constexpr double db_4 = 6.02059991327962390427;
inline constexpr double db_8 = 9.03089986991943585641;
inline constexpr double db_12 = 10.791812460476248277;
inline constexpr double db_16 = 12.0411998265592478085;

// ---- independent formulas ---------------------------------------------------

// Law of cosines, transcribed directly.
inline double slant_range_km(double polar_rad, double altitude_km, double re_km = 6371.0) {
    const double ra = re_km + altitude_km;
    return std::sqrt(ra * ra + re_km * re_km - 2.0 * re_km * ra * std::cos(polar_rad));
}

// Free-space path loss, transcribed directly.
inline double fspl_db(double distance_m, double frequency_hz) {
    return 20.0 * std::log10(4.0 * pi * distance_m * frequency_hz / 2.99792458e8);
}

// Two equal-amplitude tones separated by df, averaged over a window T:
// power ratio over one tone is 2 * (1 + sin(2 pi df T) / (2 pi df T)).
inline double two_tone_enhancement_db(double df_hz, double window_s) {
    const double x = 2.0 * pi * df_hz * window_s;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return 10.0 * std::log10(2.0 * (1.0 + sinc));
}

// Time-averaged Poynting vector of equal-frequency plane waves, evaluated
// analytically: <sin(wt+pm) sin(wt+pn)> = cos(pm-pn)/2, so
// S = (1/2Z0) [ sum_m Em^2 k_m
//             + sum_{m<n} Em En cos(pm-pn) (e_m x h_n + e_n x h_m) ].
inline leobeam::Vec3 analytic_time_avg_poynting(const leobeam::fields::PlaneWaveSet& set) {
    const double z0 = 376.730;
    leobeam::Vec3 s;
    const auto& w = set.waves;
    for (std::size_t m = 0; m < w.size(); ++m) {
        s += (w[m].amplitude * w[m].amplitude / (2.0 * z0)) * w[m].beam.propagation_unit;
        for (std::size_t n = m + 1; n < w.size(); ++n) {
            const double coupling =
                w[m].amplitude * w[n].amplitude *
                std::cos(w[m].beam.arrival_phase_rad - w[n].beam.arrival_phase_rad) /
                (2.0 * z0);
            s += coupling * (cross(w[m].beam.e_pol_unit, w[n].beam.h_pol_unit) +
                             cross(w[n].beam.e_pol_unit, w[m].beam.h_pol_unit));
        }
    }
    return s;
}

// Trapezoid-rule averaging with direct std::sin calls: a slow, structurally
// different cross-check of the production quadrature.
inline leobeam::Vec3 trapezoid_time_avg_poynting(const leobeam::fields::PlaneWaveSet& set,
                                                 double window_s, int samples) {
    const double z0 = 376.730;
    leobeam::Vec3 acc;
    for (int k = 0; k <= samples; ++k) {
        const double t = window_s * k / samples;
        leobeam::Vec3 e, h;
        for (const auto& w : set.waves) {
            const double osc =
                std::sin(w.angular_frequency_rad_s * t + w.beam.arrival_phase_rad);
            e += (w.amplitude * osc) * w.beam.e_pol_unit;
            h += (w.amplitude / z0 * osc) * w.beam.h_pol_unit;
        }
        const double weight = (k == 0 || k == samples) ? 0.5 : 1.0;
        acc += weight * cross(e, h);
    }
    return acc / static_cast<double>(samples);
}

} // namespace oracle
