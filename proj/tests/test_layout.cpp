#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ringtherm/errors.hpp"
#include "ringtherm/lattice.hpp"
#include "ringtherm/layout.hpp"
#include "ringtherm/rng.hpp"

using namespace ringtherm;

namespace {

double angle_residual(const std::vector<double>& chords, double radius) {
    double sum = 0.0;
    for (double chord : chords) sum += 2.0 * std::asin(std::min(1.0, chord / (2.0 * radius)));
    return std::abs(sum - 2.0 * std::numbers::pi);
}

} // namespace

TEST_CASE("calibration anchor maps 0.5 per mm to the reference separation") {
    CouplingCalibration cal;
    CHECK(coupling_to_distance(0.5, cal) == 9.76);
    CHECK(std::abs(distance_to_coupling(9.76, cal) - 0.5) < 1e-15);
    CHECK(std::abs(coupling_to_distance(0.5 * std::numbers::e, cal) - (9.76 - 1.5)) < 1e-12);
}

TEST_CASE("separation map is monotone and self-inverse") {
    CouplingCalibration cal;
    CHECK(coupling_to_distance(0.9, cal) < coupling_to_distance(0.5, cal));
    CHECK(coupling_to_distance(0.5, cal) < coupling_to_distance(0.1, cal));
    for (double c : {0.05, 0.13, 0.5, 0.77, 0.9, 2.4}) {
        double back = distance_to_coupling(coupling_to_distance(c, cal), cal);
        CHECK(std::abs(back - c) < 1e-12 * c);
    }
    CHECK_THROWS_AS(coupling_to_distance(0.0, cal), ConfigError);
    CHECK_THROWS_AS(coupling_to_distance(-1.0, cal), ConfigError);
    CouplingCalibration bad = cal;
    bad.decay_length_um = 0.0;
    CHECK_THROWS_AS(coupling_to_distance(0.5, bad), ConfigError);
    bad = cal;
    bad.c_ref_per_mm = -0.5;
    CHECK_THROWS_AS(distance_to_coupling(9.76, bad), ConfigError);
}

TEST_CASE("regular polygons get their textbook circumradii") {
    std::vector<double> hexagon(6, 7.3);
    CHECK(std::abs(solve_circumradius(hexagon) - 7.3) < 1e-9 * 7.3);
    std::vector<double> square(4, 5.0);
    CHECK(std::abs(solve_circumradius(square) - 5.0 / std::sqrt(2.0)) < 1e-9 * 5.0);
    std::vector<double> triangle(3, 2.0);
    CHECK(std::abs(solve_circumradius(triangle) - 2.0 / std::sqrt(3.0)) < 1e-9 * 2.0);
}

TEST_CASE("circumradius scales exactly with the chord set") {
    std::vector<double> chords{9.1, 10.4, 8.8, 11.0, 9.9};
    double r = solve_circumradius(chords);
    std::vector<double> scaled = chords;
    for (double& c : scaled) c *= 4.0;
    CHECK(solve_circumradius(scaled) == 4.0 * r);
}

TEST_CASE("random disordered rings close to within the solver tolerance") {
    rng::Stream stream(rng::derive(2024, 0x77));
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 3 + static_cast<int>(stream.below(10));
        DisorderSpec spec{0.5, 0.8};
        auto couplings = sample_couplings(spec, n, stream);
        CouplingCalibration cal;
        std::vector<double> chords;
        for (double c : couplings) chords.push_back(coupling_to_distance(c, cal));
        double r = solve_circumradius(chords);
        CHECK(angle_residual(chords, r) < 1e-10);
    }
}

TEST_CASE("placed sites reproduce the chord lengths including closure") {
    std::vector<double> chords{9.5, 10.2, 8.9, 10.8, 9.1, 10.0};
    double r = solve_circumradius(chords);
    ChipLayout layout = place_sites(chords, r);
    REQUIRE(layout.x_um.size() == chords.size());
    CHECK(layout.circumradius_um == r);
    CHECK(layout.waveguide_length_mm == 34.5);
    CHECK(layout.chords_um == chords);
    std::size_t n = chords.size();
    for (std::size_t k = 0; k < n; ++k) {
        double dx = layout.x_um[(k + 1) % n] - layout.x_um[k];
        double dy = layout.y_um[(k + 1) % n] - layout.y_um[k];
        CHECK(std::abs(std::hypot(dx, dy) - chords[k]) < 1e-9 * chords[k]);
    }
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(std::hypot(layout.x_um[k], layout.y_um[k]) - r) < 1e-9 * r);
}

TEST_CASE("infeasible and malformed chord sets are rejected") {
    CHECK_THROWS_AS(solve_circumradius({10.0, 0.1, 0.1}), ComputeError);
    CHECK_THROWS_AS(solve_circumradius({1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(solve_circumradius({1.0, -1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(solve_circumradius({1.0, 0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(place_sites({3.0, 1.0, 1.0}, 1.0), ComputeError);
    CHECK_THROWS_AS(place_sites({1.0, 1.0, 1.0}, 0.0), ConfigError);
}

TEST_CASE("couplings survive the trip through chip coordinates") {
    CouplingCalibration cal;
    DisorderSpec spec{0.5, 0.8};
    rng::Stream stream(rng::derive(2024, 0x78));
    for (int n : {3, 4, 7, 12}) {
        auto couplings = sample_couplings(spec, n, stream);
        std::vector<double> chords;
        for (double c : couplings) chords.push_back(coupling_to_distance(c, cal));
        ChipLayout layout = place_sites(chords, solve_circumradius(chords));
        std::size_t sites = layout.x_um.size();
        for (std::size_t k = 0; k < sites; ++k) {
            double dx = layout.x_um[(k + 1) % sites] - layout.x_um[k];
            double dy = layout.y_um[(k + 1) % sites] - layout.y_um[k];
            double back = distance_to_coupling(std::hypot(dx, dy), cal);
            CHECK(std::abs(back - couplings[k]) < 1e-9 * couplings[k]);
        }
    }
}
