#include "leobeam/fields.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"

namespace leobeam::fields {

namespace {
constexpr double two_pi = 2.0 * constants::pi;
constexpr double z0 = constants::free_space_impedance_ohm;
} // namespace

void validate(const PlaneWaveSet& set) {
    std::vector<std::string> issues;
    if (set.waves.empty()) issues.push_back("wave set must be non-empty");
    if (!(set.reference_amplitude > 0.0)) {
        issues.push_back("reference_amplitude must be > 0, got " +
                         std::to_string(set.reference_amplitude));
    }
    for (std::size_t m = 0; m < set.waves.size(); ++m) {
        const auto& w = set.waves[m];
        if (!(w.amplitude > 0.0)) {
            issues.push_back("wave " + std::to_string(m) + ": amplitude must be > 0");
        }
        if (!(w.angular_frequency_rad_s > 0.0)) {
            issues.push_back("wave " + std::to_string(m) +
                             ": angular frequency must be > 0");
        }
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

FieldSample instantaneous_fields(const PlaneWaveSet& set, double t_s) {
    validate(set);
    FieldSample out;
    for (const auto& w : set.waves) {
        const double osc =
            std::sin(w.angular_frequency_rad_s * t_s + w.beam.arrival_phase_rad);
        out.e += (w.amplitude * osc) * w.beam.e_pol_unit;
        out.h += (w.amplitude / z0 * osc) * w.beam.h_pol_unit;
    }
    return out;
}

PoyntingResult time_avg_poynting(const PlaneWaveSet& set, double window_s,
                                 std::int64_t steps) {
    validate(set);
    if (!(window_s > 0.0)) {
        throw validation_error("window_s must be > 0, got " + std::to_string(window_s));
    }
    double f_max = 0.0;
    for (const auto& w : set.waves) {
        f_max = std::max(f_max, w.angular_frequency_rad_s / two_pi);
    }
    const auto required =
        static_cast<std::int64_t>(std::ceil(64.0 * window_s * f_max - 1e-6));
    if (steps < required) {
        throw validation_error("quadrature under-resolved: " + std::to_string(steps) +
                               " steps but the window holds " +
                               std::to_string(window_s * f_max) +
                               " carrier periods (need >= " + std::to_string(required) +
                               ")");
    }

    // Composite midpoint rule. Each wave's phase advances by a rotation
    // recurrence instead of per-step sin() calls; the drift over n steps is
    // O(n * eps), far below the quadrature tolerance for any practical n.
    const std::size_t n = set.waves.size();
    const double dt = window_s / static_cast<double>(steps);
    std::vector<double> s(n), c(n), sd(n), cd(n);
    std::vector<Vec3> e_axis(n), h_axis(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto& w = set.waves[m];
        const double phase0 = w.angular_frequency_rad_s * 0.5 * dt + w.beam.arrival_phase_rad;
        const double dphi = w.angular_frequency_rad_s * dt;
        s[m] = std::sin(phase0);
        c[m] = std::cos(phase0);
        sd[m] = std::sin(dphi);
        cd[m] = std::cos(dphi);
        e_axis[m] = w.amplitude * w.beam.e_pol_unit;
        h_axis[m] = (w.amplitude / z0) * w.beam.h_pol_unit;
    }

    Vec3 acc;
    for (std::int64_t j = 0; j < steps; ++j) {
        Vec3 e, h;
        for (std::size_t m = 0; m < n; ++m) {
            e += s[m] * e_axis[m];
            h += s[m] * h_axis[m];
            const double sn = s[m] * cd[m] + c[m] * sd[m];
            c[m] = c[m] * cd[m] - s[m] * sd[m];
            s[m] = sn;
        }
        acc += cross(e, h);
    }

    PoyntingResult out;
    out.s_avg = acc / static_cast<double>(steps);
    out.magnitude = norm(out.s_avg);
    out.window_s = window_s;
    out.integration_steps = steps;
    return out;
}

PoyntingResult time_avg_poynting(const PlaneWaveSet& set) {
    validate(set);
    double f_max = 0.0;
    for (const auto& w : set.waves) {
        f_max = std::max(f_max, w.angular_frequency_rad_s / two_pi);
    }
    return time_avg_poynting(set, 1.0 / f_max, 256);
}

double power_ratio_db(double power, double reference_power) {
    if (!(reference_power > 0.0)) {
        throw validation_error("reference power must be > 0, got " +
                               std::to_string(reference_power));
    }
    if (!(power >= 0.0)) {
        throw validation_error("power must be >= 0, got " + std::to_string(power));
    }
    return 10.0 * std::log10(power / reference_power);
}

double enhancement_db(const PoyntingResult& combined, const PoyntingResult& single_ref) {
    return power_ratio_db(combined.magnitude, single_ref.magnitude);
}

namespace {
void check_count(int n, int min_n, const char* what) {
    if (n < min_n) {
        throw validation_error(std::string(what) + " requires at least " +
                               std::to_string(min_n) + " satellites, got " +
                               std::to_string(n));
    }
}
} // namespace

double closed_form_parallel_max(int n) {
    check_count(n, 1, "parallel-heading bound");
    return static_cast<double>(n) * n;
}

double closed_form_perpendicular_max(int n) {
    check_count(n, 2, "perpendicular-heading bound");
    if (n % 2 != 0) {
        throw validation_error("perpendicular-heading bound needs an even split, got n = " +
                               std::to_string(n));
    }
    return 0.5 * static_cast<double>(n) * n;
}

double closed_form_intersecting_max(int n, int m, double xi_rad) {
    check_count(n, 2, "intersecting-plane bound");
    if (m < 1 || m >= n) {
        throw validation_error("intersecting-plane bound needs 1 <= m < n, got m = " +
                               std::to_string(m) + ", n = " + std::to_string(n));
    }
    if (!(xi_rad >= 0.0 && xi_rad <= 0.5 * constants::pi)) {
        throw validation_error("plane inclination must lie in [0, pi/2], got " +
                               std::to_string(xi_rad));
    }
    return static_cast<double>(n) * n -
           static_cast<double>(m) * n * (1.0 - std::cos(xi_rad));
}

double miso_gain(int n) {
    check_count(n, 1, "single-link array gain");
    return static_cast<double>(n);
}

double phased_array_response(double spacing_m, double phase_offset_rad, double theta_rad,
                             double phi_rad, double wavelength_m, double element_gain) {
    std::vector<std::string> issues;
    if (!(spacing_m > 0.0)) issues.push_back("spacing_m must be > 0");
    if (!(wavelength_m > 0.0)) issues.push_back("wavelength_m must be > 0");
    if (!issues.empty()) throw validation_error(std::move(issues));
    const double k = two_pi / wavelength_m;
    const std::complex<double> af =
        1.0 + std::exp(std::complex<double>(
                  0.0, phase_offset_rad + k * spacing_m * std::sin(theta_rad) *
                                              std::cos(phi_rad)));
    return element_gain * std::abs(af);
}

} // namespace leobeam::fields
