#include "ringtherm/lattice.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "ringtherm/errors.hpp"

namespace ringtherm {

void DisorderSpec::validate() const {
    if (!(c_mean > 0.0) || !std::isfinite(c_mean))
        throw ConfigError("c_mean must be positive, got " + std::to_string(c_mean));
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ConfigError("eta must lie in [0, 1], got " + std::to_string(eta));
}

void RingLattice::validate() const {
    // N=2 would duplicate the single edge, so ring semantics start at 3.
    if (n_sites < 3)
        throw ConfigError("ring needs at least 3 sites, got " + std::to_string(n_sites));
    if (static_cast<int>(couplings.size()) != n_sites)
        throw ConfigError("expected one coupling per edge");
    for (double c : couplings)
        if (!std::isfinite(c)) throw ConfigError("non-finite coupling");
    if (excited_site < 0 || excited_site >= n_sites)
        throw ConfigError("excited_site out of range");
}

std::vector<double> sample_couplings(const DisorderSpec& spec, int n_sites, rng::Stream& stream) {
    spec.validate();
    if (n_sites < 2) throw ConfigError("n_sites must be at least 2");
    double lo = spec.c_mean - spec.half_width();
    double hi = spec.c_mean + spec.half_width();
    std::vector<double> c(static_cast<std::size_t>(n_sites));
    for (auto& ck : c) ck = stream.uniform(lo, hi);
    return c;
}

Hamiltonian build_hamiltonian(const RingLattice& lattice) {
    lattice.validate();
    int n = lattice.n_sites;
    Hamiltonian h;
    h.n = n;
    h.a.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        int j = (k + 1) % n;
        h.at(k, j) += lattice.couplings[static_cast<std::size_t>(k)];
        h.at(j, k) += lattice.couplings[static_cast<std::size_t>(k)];
    }
    return h;
}

std::optional<Bipartition> find_chiral_permutation(const Hamiltonian& h) {
    int n = h.n;
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::queue<int> frontier;
    for (int start = 0; start < n; ++start) {
        if (color[static_cast<std::size_t>(start)] != -1) continue;
        color[static_cast<std::size_t>(start)] = 0;
        frontier.push(start);
        while (!frontier.empty()) {
            int i = frontier.front();
            frontier.pop();
            for (int j = 0; j < n; ++j) {
                if (i == j || h.at(i, j) == 0.0) continue;
                int& cj = color[static_cast<std::size_t>(j)];
                if (cj == -1) {
                    cj = 1 - color[static_cast<std::size_t>(i)];
                    frontier.push(j);
                } else if (cj == color[static_cast<std::size_t>(i)]) {
                    return std::nullopt; // odd cycle
                }
            }
        }
    }
    Bipartition b;
    b.coloring = color;
    b.permutation.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (color[static_cast<std::size_t>(i)] == 0) b.permutation.push_back(i);
    for (int i = 0; i < n; ++i)
        if (color[static_cast<std::size_t>(i)] == 1) b.permutation.push_back(i);
    return b;
}

} // namespace ringtherm
