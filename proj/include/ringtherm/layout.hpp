#pragma once

#include <vector>

namespace ringtherm {

// Exponential separation-to-coupling calibration
// c(d) = c_ref * exp(-(d - d_ref) / xi). The shipped anchor is
// 9.76 um <-> 0.5 mm^-1 at 852 nm; the decay length default of 1.5 um is an
// illustrative placeholder and must be calibrated for a real process.
struct CouplingCalibration {
    double d_ref_um = 9.76;
    double c_ref_per_mm = 0.5;
    double decay_length_um = 1.5;
    double wavelength_nm = 852.0;

    void validate() const;
};

struct ChipLayout {
    double circumradius_um = 0.0;
    std::vector<double> x_um;
    std::vector<double> y_um;
    std::vector<double> chords_um;
    double waveguide_length_mm = 34.5;
};

double coupling_to_distance(double c_per_mm, const CouplingCalibration& cal);
double distance_to_coupling(double d_um, const CouplingCalibration& cal);

// Unique R >= max(chords)/2 with sum_k 2 asin(chord_k / (2R)) = 2 pi, found
// by bisection to 1e-12 relative. Raises ComputeError when no circumscribed
// circle with the center inside the polygon exists.
double solve_circumradius(const std::vector<double>& chords_um);

// Site 0 at angle 0, site k+1 advanced by the central angle of chord k.
ChipLayout place_sites(const std::vector<double>& chords_um, double circumradius_um,
                       double waveguide_length_mm = 34.5);

} // namespace ringtherm
