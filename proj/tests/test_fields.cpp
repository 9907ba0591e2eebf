#include "doctest.h"

#include <cmath>

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"
#include "leobeam/fields.hpp"
#include "leobeam/geometry.hpp"
#include "oracles.hpp"

using namespace leobeam;
using namespace leobeam::fields;

namespace {
constexpr double carrier_hz = 3.5e9;
constexpr double omega = 2.0 * constants::pi * carrier_hz;

PlaneWave wave_from_sat(double polar_rad, double azimuth_rad, Vec3 heading,
                        double amplitude, double initial_phase = 0.0) {
    geometry::SatelliteBeamSpec sat;
    sat.altitude_km = 550.0;
    sat.polar_angle_rad = polar_rad;
    sat.azimuth_rad = azimuth_rad;
    sat.heading_unit = heading;
    sat.initial_phase_rad = initial_phase;
    sat.amplitude_at_receiver = amplitude;
    PlaneWave w;
    w.beam = geometry::beam_at_point(sat, {0.0, 0.0}, oracle::wavelength_3p5ghz_m);
    w.amplitude = amplitude;
    w.angular_frequency_rad_s = omega;
    return w;
}

PlaneWave zenith_wave(double amplitude, double phase_rad) {
    PlaneWave w;
    w.beam.propagation_unit = {0.0, 0.0, -1.0};
    w.beam.e_pol_unit = {0.0, -1.0, 0.0};
    w.beam.h_pol_unit = {-1.0, 0.0, 0.0};
    w.beam.arrival_phase_rad = phase_rad;
    w.amplitude = amplitude;
    w.angular_frequency_rad_s = omega;
    return w;
}
} // namespace

TEST_CASE("single-beam average power is E^2 / (2 Z0)") {
    PlaneWaveSet set;
    set.reference_amplitude = 1.0;
    set.waves.push_back(zenith_wave(std::sqrt(2.0), 0.7));
    const auto avg = time_avg_poynting(set);
    CHECK(avg.magnitude ==
          doctest::Approx(1.0 / constants::free_space_impedance_ohm).epsilon(1e-9));
    CHECK(avg.s_avg.z < 0.0); // energy flows downward
    CHECK(avg.magnitude == doctest::Approx(norm(avg.s_avg)).epsilon(1e-12));
    CHECK(avg.integration_steps == 256);
}

TEST_CASE("co-phased equal beams quadruple the power; antiphase cancels") {
    PlaneWaveSet set;
    set.reference_amplitude = 1.0;
    set.waves.push_back(zenith_wave(1.0, 0.0));
    set.waves.push_back(zenith_wave(1.0, 0.0));
    PlaneWaveSet single;
    single.reference_amplitude = 1.0;
    single.waves.push_back(zenith_wave(1.0, 0.0));
    const auto pair = time_avg_poynting(set);
    const auto ref = time_avg_poynting(single);
    CHECK(pair.magnitude == doctest::Approx(4.0 * ref.magnitude).epsilon(1e-9));
    CHECK(enhancement_db(pair, ref) == doctest::Approx(oracle::db_4).epsilon(1e-9));

    set.waves[1].beam.arrival_phase_rad = constants::pi;
    const auto cancelled = time_avg_poynting(set);
    CHECK(cancelled.magnitude < 1e-12 * ref.magnitude);
}

TEST_CASE("quadrature agrees with the analytic average for oblique sets") {
    // Two-satellite parallel-heading geometry, then a lopsided custom set.
    PlaneWaveSet set;
    set.reference_amplitude = std::sqrt(2.0);
    const double polar = geometry::polar_angle_for_incidence_rad(0.05, 550.0);
    set.waves.push_back(
        wave_from_sat(polar, 0.5 * constants::pi, {0.0, -1.0, 0.0}, std::sqrt(2.0)));
    set.waves.push_back(
        wave_from_sat(polar, -0.5 * constants::pi, {0.0, -1.0, 0.0}, std::sqrt(2.0), 1.3));
    auto avg = time_avg_poynting(set);
    auto oracle_avg = oracle::analytic_time_avg_poynting(set);
    CHECK(norm(avg.s_avg - oracle_avg) < 1e-9 * norm(oracle_avg));

    set.waves.push_back(
        wave_from_sat(2.0 * polar, 0.3, {-1.0, 0.0, 0.0}, 0.8, 2.1));
    avg = time_avg_poynting(set);
    oracle_avg = oracle::analytic_time_avg_poynting(set);
    CHECK(norm(avg.s_avg - oracle_avg) < 1e-9 * norm(oracle_avg));

    // And against a structurally different numeric rule.
    const auto trap = oracle::trapezoid_time_avg_poynting(set, avg.window_s, 40000);
    CHECK(norm(avg.s_avg - trap) < 1e-6 * norm(oracle_avg));
}

TEST_CASE("averaging window must resolve every carrier period") {
    PlaneWaveSet set;
    set.reference_amplitude = 1.0;
    set.waves.push_back(zenith_wave(1.0, 0.0));
    const double period = 1.0 / carrier_hz;
    CHECK_NOTHROW(time_avg_poynting(set, period, 64));
    CHECK_THROWS_AS(time_avg_poynting(set, period, 63), validation_error);
    CHECK_THROWS_AS(time_avg_poynting(set, 10.0 * period, 512), validation_error);
    CHECK_NOTHROW(time_avg_poynting(set, 10.0 * period, 640));
    CHECK_THROWS_AS(time_avg_poynting(set, 0.0, 64), validation_error);
}

TEST_CASE("wave-set validation rejects degenerate members") {
    PlaneWaveSet set;
    CHECK_THROWS_AS(validate(set), validation_error); // empty
    set.waves.push_back(zenith_wave(1.0, 0.0));
    set.reference_amplitude = 0.0;
    CHECK_THROWS_AS(validate(set), validation_error);
    set.reference_amplitude = 1.0;
    set.waves.push_back(zenith_wave(1.0, 0.0));
    set.waves[1].amplitude = -2.0;
    set.waves[1].angular_frequency_rad_s = 0.0;
    try {
        validate(set);
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(e.issues().size() == 2);
    }
}

TEST_CASE("instantaneous fields follow each wave's oscillation") {
    PlaneWaveSet set;
    set.reference_amplitude = 1.0;
    set.waves.push_back(zenith_wave(2.0, 0.5 * constants::pi));
    const auto f = instantaneous_fields(set, 0.0);
    // sin(pi/2) = 1: E = 2 * e_pol, H = (2 / Z0) * h_pol.
    CHECK(norm(f.e - 2.0 * set.waves[0].beam.e_pol_unit) < 1e-12);
    CHECK(norm(f.h - (2.0 / constants::free_space_impedance_ohm) *
                         set.waves[0].beam.h_pol_unit) <
          1e-12);
}

TEST_CASE("closed-form enhancement bounds") {
    CHECK(closed_form_parallel_max(1) == 1.0);
    CHECK(closed_form_parallel_max(2) == 4.0);
    CHECK(closed_form_parallel_max(4) == 16.0);
    CHECK(closed_form_parallel_max(8) == 64.0);
    CHECK(closed_form_perpendicular_max(2) == 2.0);
    CHECK(closed_form_perpendicular_max(4) == 8.0);
    CHECK(closed_form_intersecting_max(4, 2, constants::pi / 3.0) ==
          doctest::Approx(12.0).epsilon(1e-12));
    CHECK(closed_form_intersecting_max(4, 2, 0.0) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(miso_gain(4) == 4.0);

    CHECK_THROWS_AS(closed_form_parallel_max(0), validation_error);
    CHECK_THROWS_AS(closed_form_perpendicular_max(3), validation_error);
    CHECK_THROWS_AS(closed_form_intersecting_max(4, 0, 0.3), validation_error);
    CHECK_THROWS_AS(closed_form_intersecting_max(4, 4, 0.3), validation_error);
    CHECK_THROWS_AS(closed_form_intersecting_max(4, 2, -0.1), validation_error);
    CHECK_THROWS_AS(closed_form_intersecting_max(4, 2, 2.0), validation_error);
}

TEST_CASE("distributed gain doubles the single-link gain on the dB scale") {
    for (int n : {2, 4, 8, 16}) {
        const double distributed = power_ratio_db(closed_form_parallel_max(n), 1.0);
        const double single_link = power_ratio_db(miso_gain(n), 1.0);
        CHECK(std::abs(distributed - 2.0 * single_link) < 1e-12);
    }
}

TEST_CASE("power ratios refuse a dead reference") {
    CHECK_THROWS_AS(power_ratio_db(1.0, 0.0), validation_error);
    CHECK_THROWS_AS(power_ratio_db(1.0, -1.0), validation_error);
    PoyntingResult dead;
    PoyntingResult live;
    live.magnitude = 1.0;
    CHECK_THROWS_AS(enhancement_db(live, dead), validation_error);
}

TEST_CASE("two-element array factor") {
    const double lam = oracle::wavelength_3p5ghz_m;
    // Broadside, in phase: |1 + 1| = 2.
    CHECK(phased_array_response(0.5 * lam, 0.0, 0.0, 0.0, lam) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // Anti-phased at broadside: null.
    CHECK(phased_array_response(0.5 * lam, constants::pi, 0.0, 0.0, lam) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // Half-wave spacing, endfire: k d sin(90) cos(0) = pi, null again.
    CHECK(phased_array_response(0.5 * lam, 0.0, 0.5 * constants::pi, 0.0, lam) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    // Element pattern scales multiplicatively.
    CHECK(phased_array_response(0.5 * lam, 0.0, 0.0, 0.0, lam, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(phased_array_response(0.0, 0.0, 0.0, 0.0, lam), validation_error);
    CHECK_THROWS_AS(phased_array_response(1.0, 0.0, 0.0, 0.0, 0.0), validation_error);
}
