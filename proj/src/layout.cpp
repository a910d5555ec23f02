#include "ringtherm/layout.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ringtherm/errors.hpp"

namespace ringtherm {

void CouplingCalibration::validate() const {
    if (!(decay_length_um > 0.0)) throw ConfigError("calibration decay length must be positive");
    if (!(c_ref_per_mm > 0.0)) throw ConfigError("calibration reference coupling must be positive");
    if (!(d_ref_um > 0.0)) throw ConfigError("calibration reference separation must be positive");
}

double coupling_to_distance(double c_per_mm, const CouplingCalibration& cal) {
    cal.validate();
    if (!(c_per_mm > 0.0)) throw ConfigError("coupling must be positive to map to a separation");
    return cal.d_ref_um - cal.decay_length_um * std::log(c_per_mm / cal.c_ref_per_mm);
}

double distance_to_coupling(double d_um, const CouplingCalibration& cal) {
    cal.validate();
    return cal.c_ref_per_mm * std::exp(-(d_um - cal.d_ref_um) / cal.decay_length_um);
}

namespace {

double angle_sum(const std::vector<double>& chords, double radius) {
    double sum = 0.0;
    for (double chord : chords) {
        double ratio = chord / (2.0 * radius);
        if (ratio > 1.0) ratio = 1.0;
        sum += 2.0 * std::asin(ratio);
    }
    return sum;
}

} // namespace

double solve_circumradius(const std::vector<double>& chords_um) {
    if (chords_um.size() < 3) throw ConfigError("need at least 3 chords to close a polygon");
    double longest = 0.0;
    for (double chord : chords_um) {
        if (!(chord > 0.0)) throw ConfigError("chords must be positive");
        longest = std::max(longest, chord);
    }

    const double two_pi = 2.0 * std::numbers::pi;
    double r_min = 0.5 * longest;
    // angle sum is strictly decreasing in R; at R = max/2 it must reach 2*pi
    // or the chord set admits no circumscribed circle with the center inside
    if (angle_sum(chords_um, r_min) < two_pi)
        throw ComputeError("chord set is geometrically infeasible: angle sum below 2*pi "
                           "even at the minimal radius");

    double r_hi = r_min;
    for (int i = 0; i < 1024 && angle_sum(chords_um, r_hi) >= two_pi; ++i) r_hi *= 2.0;
    double r_lo = r_min;

    for (int i = 0; i < 2048; ++i) {
        double mid = 0.5 * (r_lo + r_hi);
        if (angle_sum(chords_um, mid) >= two_pi)
            r_lo = mid;
        else
            r_hi = mid;
        if ((r_hi - r_lo) <= 1e-12 * r_hi) break;
    }
    return 0.5 * (r_lo + r_hi);
}

ChipLayout place_sites(const std::vector<double>& chords_um, double circumradius_um,
                       double waveguide_length_mm) {
    if (!(circumradius_um > 0.0)) throw ConfigError("circumradius must be positive");
    ChipLayout layout;
    layout.circumradius_um = circumradius_um;
    layout.chords_um = chords_um;
    layout.waveguide_length_mm = waveguide_length_mm;

    std::size_t n = chords_um.size();
    layout.x_um.resize(n);
    layout.y_um.resize(n);
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        layout.x_um[k] = circumradius_um * std::cos(theta);
        layout.y_um[k] = circumradius_um * std::sin(theta);
        double ratio = chords_um[k] / (2.0 * circumradius_um);
        if (ratio > 1.0) throw ComputeError("chord exceeds the circle diameter");
        theta += 2.0 * std::asin(ratio);
    }
    return layout;
}

} // namespace ringtherm
