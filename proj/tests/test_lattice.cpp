#include <doctest.h>

#include <cmath>

#include "ringtherm/errors.hpp"
#include "ringtherm/lattice.hpp"

using namespace ringtherm;

TEST_CASE("zero disorder collapses sampling to the mean") {
    DisorderSpec spec{0.5, 0.0};
    rng::Stream s(rng::derive(1, 0));
    auto c = sample_couplings(spec, 4, s);
    REQUIRE(c.size() == 4);
    for (double v : c) CHECK(v == 0.5);
}

TEST_CASE("samples stay inside the disorder window") {
    DisorderSpec spec{0.5, 0.8};
    double lo = spec.c_mean - spec.half_width();
    double hi = spec.c_mean + spec.half_width();
    rng::Stream s(rng::derive(2, 0));
    auto c = sample_couplings(spec, 6, s);
    REQUIRE(c.size() == 6);
    for (double v : c) {
        CHECK(v >= lo);
        CHECK(v <= hi);
    }
}

TEST_CASE("pooled draws match the uniform law moments") {
    DisorderSpec spec{0.5, 0.8};
    rng::Stream s(rng::derive(3, 0));
    const int n = 250'000; // 4 couplings per draw -> 1e6 values
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i)
        for (double v : sample_couplings(spec, 4, s)) {
            sum += v;
            sum_sq += v * v;
        }
    double count = 4.0 * n;
    double mean = sum / count;
    double var = sum_sq / count - mean * mean;
    double expected_var = 0.4 * 0.4 / 3.0;
    CHECK(std::abs(mean - 0.5) < 0.001);
    CHECK(std::abs(var - expected_var) < 0.01 * expected_var);
}

TEST_CASE("sampling is reproducible from the key") {
    DisorderSpec spec{0.5, 0.8};
    rng::Stream a(rng::derive(9, 7)), b(rng::derive(9, 7));
    CHECK(sample_couplings(spec, 12, a) == sample_couplings(spec, 12, b));
}

TEST_CASE("invalid specs are rejected") {
    rng::Stream s(1);
    CHECK_THROWS_AS(sample_couplings(DisorderSpec{0.5, 1.5}, 4, s), ConfigError);
    CHECK_THROWS_AS(sample_couplings(DisorderSpec{0.5, -0.1}, 4, s), ConfigError);
    CHECK_THROWS_AS(sample_couplings(DisorderSpec{0.0, 0.5}, 4, s), ConfigError);
    CHECK_THROWS_AS(sample_couplings(DisorderSpec{0.5, 0.5}, 1, s), ConfigError);
}

TEST_CASE("hamiltonian holds couplings on ring-adjacent pairs only") {
    RingLattice lat;
    lat.n_sites = 3;
    lat.couplings = {0.2, 0.3, 0.4};
    Hamiltonian h = build_hamiltonian(lat);
    CHECK(h.at(0, 1) == 0.2);
    CHECK(h.at(1, 0) == 0.2);
    CHECK(h.at(1, 2) == 0.3);
    CHECK(h.at(2, 1) == 0.3);
    CHECK(h.at(0, 2) == 0.4);
    CHECK(h.at(2, 0) == 0.4);
    for (int i = 0; i < 3; ++i) CHECK(h.at(i, i) == 0.0);
}

TEST_CASE("uniform four-ring gives a circulant first row") {
    RingLattice lat;
    lat.n_sites = 4;
    lat.couplings = {0.5, 0.5, 0.5, 0.5};
    Hamiltonian h = build_hamiltonian(lat);
    CHECK(h.at(0, 0) == 0.0);
    CHECK(h.at(0, 1) == 0.5);
    CHECK(h.at(0, 2) == 0.0);
    CHECK(h.at(0, 3) == 0.5);
}

TEST_CASE("two-site rings are rejected") {
    RingLattice lat;
    lat.n_sites = 2;
    lat.couplings = {0.5, 0.5};
    CHECK_THROWS_AS(build_hamiltonian(lat), ConfigError);
}

TEST_CASE("even rings bipartition with alternating colors") {
    RingLattice lat;
    lat.n_sites = 4;
    lat.couplings = {0.1, 0.2, 0.3, 0.4};
    auto bp = find_chiral_permutation(build_hamiltonian(lat));
    REQUIRE(bp.has_value());
    CHECK(bp->coloring == std::vector<int>{0, 1, 0, 1});
    CHECK(bp->permutation == std::vector<int>{0, 2, 1, 3});
}

TEST_CASE("odd rings admit no bipartition") {
    RingLattice lat;
    lat.n_sites = 3;
    lat.couplings = {0.5, 0.5, 0.5};
    CHECK(!find_chiral_permutation(build_hamiltonian(lat)).has_value());
}

TEST_CASE("bipartition success matches parity for all ring sizes") {
    for (int n = 3; n <= 30; ++n) {
        RingLattice lat;
        lat.n_sites = n;
        rng::Stream s(rng::derive(21, static_cast<std::uint64_t>(n)));
        lat.couplings = sample_couplings(DisorderSpec{0.5, 0.8}, n, s);
        auto bp = find_chiral_permutation(build_hamiltonian(lat));
        CHECK(bp.has_value() == (n % 2 == 0));
    }
}

TEST_CASE("the permutation block-off-diagonalizes even rings") {
    for (int n : {4, 8, 14, 22}) {
        RingLattice lat;
        lat.n_sites = n;
        rng::Stream s(rng::derive(22, static_cast<std::uint64_t>(n)));
        lat.couplings = sample_couplings(DisorderSpec{0.5, 0.8}, n, s);
        Hamiltonian h = build_hamiltonian(lat);
        auto bp = find_chiral_permutation(h);
        REQUIRE(bp.has_value());
        int half = n / 2;
        REQUIRE(static_cast<int>(bp->permutation.size()) == n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                bool same_block = (i < half) == (j < half);
                double v = h.at(bp->permutation[static_cast<std::size_t>(i)],
                                bp->permutation[static_cast<std::size_t>(j)]);
                if (same_block) CHECK(v == 0.0);
            }
        }
    }
}
