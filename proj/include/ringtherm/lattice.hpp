#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ringtherm/rng.hpp"

namespace ringtherm {

// Statistical law of one disorder ensemble: couplings are i.i.d. draws from
// Uniform[c_mean - half_width, c_mean + half_width] with half_width = eta * c_mean.
struct DisorderSpec {
    double c_mean = 0.5; // mm^-1
    double eta = 0.8;    // in [0, 1]

    double half_width() const { return eta * c_mean; }
    void validate() const;
};

// One disorder realization. couplings[k] joins site k and site (k+1) mod n.
struct RingLattice {
    int n_sites = 0;
    std::vector<double> couplings; // mm^-1
    int excited_site = 0;

    void validate() const;
};

// Dense real symmetric matrix with zero diagonal. Ring builders fill only
// ring-adjacent pairs; the propagation and bipartition code accepts any
// symmetric coupling pattern.
struct Hamiltonian {
    int n = 0;
    std::vector<double> a; // row-major n*n

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Two-coloring plus the site reordering that block-off-diagonalizes H.
struct Bipartition {
    std::vector<int> coloring;    // 0 = A, 1 = B per site
    std::vector<int> permutation; // A sites first, then B sites
};

// n_sites i.i.d. uniform draws; identical stream key gives identical output.
std::vector<double> sample_couplings(const DisorderSpec& spec, int n_sites, rng::Stream& stream);

Hamiltonian build_hamiltonian(const RingLattice& lattice);

// Two-colors the adjacency graph of nonzero off-diagonal entries. Empty
// result means no bipartition exists (odd cycles break chiral symmetry).
std::optional<Bipartition> find_chiral_permutation(const Hamiltonian& h);

} // namespace ringtherm
