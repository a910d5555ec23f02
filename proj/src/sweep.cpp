#include "ringtherm/sweep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "ringtherm/errors.hpp"
#include "ringtherm/evolve.hpp"
#include "ringtherm/parallel.hpp"

namespace ringtherm {

namespace {

constexpr std::uint64_t kRealizationTag = 0x05;

std::uint64_t cell_key(std::uint64_t master_seed, int n_sites, double eta) {
    return rng::derive(master_seed, rng::tag::cell, static_cast<std::uint64_t>(n_sites),
                       std::bit_cast<std::uint64_t>(eta));
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

void SweepGrid::validate() const {
    if (site_counts.empty() || disorder_levels.empty())
        throw ConfigError("sweep grid must have at least one N and one eta");
    for (int n : site_counts)
        if (n < 3) throw ConfigError("grid site count below 3");
    for (double eta : disorder_levels)
        if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("grid eta outside [0, 1]");
    if (ensemble_size < 2) throw ConfigError("ensemble_size must be at least 2");
    if (repeats < 2) throw ConfigError("repeats must be at least 2");
    if (!(z_normalized >= 0.0)) throw ConfigError("z_normalized must be nonnegative");
    if (!(c_mean > 0.0)) throw ConfigError("c_mean must be positive");
}

EnsembleRecord simulate_record(int n_sites, const DisorderSpec& spec, double z_normalized,
                               int excited_site, std::uint64_t record_key) {
    rng::Stream stream(record_key);
    RingLattice lattice;
    lattice.n_sites = n_sites;
    lattice.couplings = sample_couplings(spec, n_sites, stream);
    lattice.excited_site = excited_site;

    Hamiltonian h = build_hamiltonian(lattice);
    FieldState psi0 = single_site_excitation(n_sites, excited_site);
    FieldState psi = propagate(h, psi0, z_normalized / spec.c_mean);

    EnsembleRecord record;
    record.seed = record_key;
    record.n_sites = n_sites;
    record.excited_site = excited_site;
    record.couplings = std::move(lattice.couplings);
    record.intensities = intensities(psi);
    double sum = 0.0;
    for (double v : record.intensities) sum += v;
    for (double& v : record.intensities) v /= sum;
    return record;
}

std::vector<EnsembleRecord> simulate_ensemble(int n_sites, const DisorderSpec& spec,
                                              double z_normalized, int excited_site, int size,
                                              std::uint64_t master_seed) {
    if (size < 1) throw ConfigError("ensemble size must be at least 1");
    std::uint64_t base = cell_key(master_seed, n_sites, spec.eta);
    std::vector<EnsembleRecord> records(static_cast<std::size_t>(size));
    parallel_for(records.size(), [&](std::size_t r) {
        std::uint64_t key = rng::derive(base, kRealizationTag, static_cast<std::uint64_t>(r));
        records[r] = simulate_record(n_sites, spec, z_normalized, excited_site, key);
    });
    return records;
}

PhaseCell run_cell(int n_sites, double eta, const SweepGrid& grid) {
    grid.validate();
    DisorderSpec spec{grid.c_mean, eta};
    auto records = simulate_ensemble(n_sites, spec, grid.z_normalized, 0, grid.ensemble_size,
                                     grid.master_seed);

    BootstrapReport boot = bootstrap_g2(records, grid.ensemble_size, grid.repeats,
                                        cell_key(grid.master_seed, n_sites, eta));

    std::vector<double> mean_int(static_cast<std::size_t>(n_sites), 0.0);
    for (const auto& rec : records)
        for (int i = 0; i < n_sites; ++i)
            mean_int[static_cast<std::size_t>(i)] += rec.intensities[static_cast<std::size_t>(i)];
    for (double& v : mean_int) v /= static_cast<double>(records.size());

    RingLattice representative;
    representative.n_sites = n_sites;
    representative.couplings.assign(static_cast<std::size_t>(n_sites), grid.c_mean);

    PhaseCell cell;
    cell.n_sites = n_sites;
    cell.eta = eta;
    cell.g2_mean = boot.g2_mean;
    cell.g2_std = boot.g2_std;
    cell.lambda_mean = localization_level(mean_int);
    cell.chiral = find_chiral_permutation(build_hamiltonian(representative)).has_value();
    return cell;
}

std::vector<PhaseCell> gap_map(const SweepGrid& grid) {
    grid.validate();
    std::size_t n_cells = grid.site_counts.size() * grid.disorder_levels.size();
    std::vector<PhaseCell> cells(n_cells);
    // realizations inside a cell already run in parallel for large ensembles;
    // parallelizing over cells keeps small-ensemble grids busy too
    parallel_for(n_cells, [&](std::size_t idx) {
        int n = grid.site_counts[idx / grid.disorder_levels.size()];
        double eta = grid.disorder_levels[idx % grid.disorder_levels.size()];
        cells[idx] = run_cell(n, eta, grid);
    });
    return cells;
}

double derive_bound(const std::vector<PhaseCell>& cells, double gap_threshold) {
    if (cells.empty()) throw ComputeError("derive_bound needs a nonempty grid");

    std::set<int> n_set;
    std::set<double> eta_set;
    std::map<std::pair<int, double>, const PhaseCell*> by_key;
    for (const auto& c : cells) {
        n_set.insert(c.n_sites);
        eta_set.insert(c.eta);
        by_key[{c.n_sites, c.eta}] = &c;
    }
    if (by_key.size() != n_set.size() * eta_set.size())
        throw ComputeError("derive_bound needs a complete (N, eta) grid");

    std::vector<int> even_rows;
    for (int n : n_set)
        if (n % 2 == 0 && n_set.count(n - 1)) even_rows.push_back(n);
    if (even_rows.empty())
        throw ComputeError("no adjacent parity pairs (even N with N-1) in the grid");
    std::vector<double> etas(eta_set.begin(), eta_set.end());

    std::size_t rows = even_rows.size(), cols = etas.size();
    std::vector<char> marked(rows * cols);
    std::vector<double> pair_lambda(rows * cols);
    std::size_t n_marked = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const PhaseCell* even = by_key[{even_rows[i], etas[j]}];
            const PhaseCell* odd = by_key[{even_rows[i] - 1, etas[j]}];
            bool m = std::abs(even->g2_mean - odd->g2_mean) < gap_threshold;
            marked[i * cols + j] = m;
            n_marked += m;
            pair_lambda[i * cols + j] = 0.5 * (even->lambda_mean + odd->lambda_mean);
        }
    }
    if (n_marked == 0)
        throw ComputeError("no boundary: threshold marks no cells");
    if (n_marked == rows * cols)
        throw ComputeError("no boundary: threshold marks every cell");

    std::vector<double> boundary;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            char m = marked[i * cols + j];
            bool edge = (i > 0 && marked[(i - 1) * cols + j] != m) ||
                        (i + 1 < rows && marked[(i + 1) * cols + j] != m) ||
                        (j > 0 && marked[i * cols + j - 1] != m) ||
                        (j + 1 < cols && marked[i * cols + j + 1] != m);
            if (edge) boundary.push_back(pair_lambda[i * cols + j]);
        }
    }
    if (boundary.empty()) throw ComputeError("grid too coarse to locate a boundary");
    return median(std::move(boundary));
}

std::vector<SizeStudyRow> ensemble_size_study(int n_odd, int n_even,
                                              const std::vector<int>& sizes, int repeats,
                                              const DisorderSpec& spec, double z_normalized,
                                              std::uint64_t master_seed) {
    if (sizes.empty()) throw ConfigError("size study needs at least one ensemble size");
    if (!std::is_sorted(sizes.begin(), sizes.end()))
        throw ConfigError("ensemble sizes must be ascending");
    for (int s : sizes)
        if (s < 2) throw ConfigError("ensemble sizes must be at least 2");
    if (repeats < 2) throw ConfigError("size study needs at least 2 repeats");
    spec.validate();

    std::vector<int> ns{n_odd, n_even};
    std::sort(ns.begin(), ns.end());

    std::vector<SizeStudyRow> rows(sizes.size() * 2);
    struct Task {
        std::size_t row;
        int n;
        int size;
        int rep;
    };
    std::vector<Task> tasks;
    tasks.reserve(sizes.size() * 2 * static_cast<std::size_t>(repeats));
    for (std::size_t si = 0; si < sizes.size(); ++si)
        for (std::size_t ni = 0; ni < ns.size(); ++ni)
            for (int rep = 0; rep < repeats; ++rep)
                tasks.push_back({si * 2 + ni, ns[ni], sizes[si], rep});

    std::vector<double> estimates(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t t) {
        const Task& task = tasks[t];
        std::vector<double> samples(static_cast<std::size_t>(task.size));
        for (int r = 0; r < task.size; ++r) {
            std::uint64_t key = rng::derive(
                master_seed, rng::tag::size_study, static_cast<std::uint64_t>(task.n),
                static_cast<std::uint64_t>(task.size), static_cast<std::uint64_t>(task.rep),
                static_cast<std::uint64_t>(r));
            EnsembleRecord rec = simulate_record(task.n, spec, z_normalized, 0, key);
            samples[static_cast<std::size_t>(r)] =
                rec.intensities[static_cast<std::size_t>(rec.excited_site)];
        }
        estimates[t] = g2(samples);
    });

    for (std::size_t row = 0; row < rows.size(); ++row) {
        rows[row].ensemble_size = sizes[row / 2];
        rows[row].n_sites = ns[row % 2];
    }
    for (std::size_t row = 0; row < rows.size(); ++row) {
        double mean = 0.0;
        for (int rep = 0; rep < repeats; ++rep)
            mean += estimates[row * static_cast<std::size_t>(repeats) + rep];
        mean /= static_cast<double>(repeats);
        double var = 0.0;
        for (int rep = 0; rep < repeats; ++rep) {
            double e = estimates[row * static_cast<std::size_t>(repeats) + rep];
            var += (e - mean) * (e - mean);
        }
        var /= static_cast<double>(repeats - 1);
        rows[row].g2_mean = mean;
        rows[row].g2_std = std::sqrt(var);
    }
    return rows;
}

} // namespace ringtherm
