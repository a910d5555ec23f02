#pragma once

#include <cstdint>
#include <vector>

#include "ringtherm/lattice.hpp"
#include "ringtherm/stats.hpp"

namespace ringtherm {

struct SweepGrid {
    std::vector<int> site_counts;
    std::vector<double> disorder_levels;
    double z_normalized = 17.25; // z * c_mean, dimensionless
    double c_mean = 0.5;
    int ensemble_size = 120;
    int repeats = 1000; // bootstrap repeats per cell
    std::uint64_t master_seed = 0;

    void validate() const;
};

// Aggregates for one (N, eta) grid point.
struct PhaseCell {
    int n_sites = 0;
    double eta = 0.0;
    double g2_mean = 0.0;
    double g2_std = 0.0;
    double lambda_mean = 0.0;
    bool chiral = false;
};

struct SizeStudyRow {
    int ensemble_size = 0;
    int n_sites = 0;
    double g2_mean = 0.0;
    double g2_std = 0.0;
};

// One realization: sample couplings, build H, propagate the excited site to
// z = z_normalized / c_mean, record unit-sum intensities. The record seed is
// the derived stream key, so any realization can be replayed in isolation.
EnsembleRecord simulate_record(int n_sites, const DisorderSpec& spec, double z_normalized,
                               int excited_site, std::uint64_t record_key);

// Realization r of a cell ensemble draws from key
// derive(master, tag::cell, n, bits(eta), r); independent of grid position
// and of evaluation order.
std::vector<EnsembleRecord> simulate_ensemble(int n_sites, const DisorderSpec& spec,
                                              double z_normalized, int excited_site, int size,
                                              std::uint64_t master_seed);

PhaseCell run_cell(int n_sites, double eta, const SweepGrid& grid);

// One PhaseCell per (N, eta), row-major by (n_sites, eta). Cells are
// evaluated in parallel; output order and content are seed-determined.
std::vector<PhaseCell> gap_map(const SweepGrid& grid);

// Marks cells where |g2(even N) - g2(N-1)| < gap_threshold over adjacent
// parity pairs (4<->3, 6<->5, ...), then returns the median pair-lambda over
// cells bordering the marked/unmarked boundary.
double derive_bound(const std::vector<PhaseCell>& cells, double gap_threshold);

// For each ensemble size, `repeats` independent ensembles per parity; band =
// mean +- std of g2 across repeats. Rows row-major by (size, n_sites).
std::vector<SizeStudyRow> ensemble_size_study(int n_odd, int n_even,
                                              const std::vector<int>& sizes, int repeats,
                                              const DisorderSpec& spec, double z_normalized,
                                              std::uint64_t master_seed);

} // namespace ringtherm
