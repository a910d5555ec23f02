#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringtherm/rng.hpp"

namespace ringtherm {

// Persisted unit of Monte Carlo data: one disorder realization's seed,
// couplings and unit-sum output intensities.
struct EnsembleRecord {
    std::uint64_t seed = 0;
    int n_sites = 0;
    int excited_site = 0;
    std::vector<double> couplings;
    std::vector<double> intensities;

    void validate() const;
};

struct BootstrapReport {
    double g2_mean = 0.0;
    double g2_std = 0.0;
    int resample_size = 0;
    int repeats = 0;
};

enum class AmplitudeLabel { RayleighLike, GaussianLike };

struct AmplitudeClassification {
    AmplitudeLabel label;
    double log_likelihood_ratio; // rayleigh minus half-normal total log-likelihood
};

struct Histogram {
    std::vector<double> edges;  // bins + 1 values
    std::vector<long> counts;
};

// <I^2>/<I>^2 over intensity-at-excited-site samples.
double g2(const std::vector<double>& samples);

// Resamples with replacement, g2 per resample, mean and std (ddof 1) across
// repeats. Deterministic in (records, key, repeats).
BootstrapReport bootstrap_g2(const std::vector<EnsembleRecord>& records, int resample_size,
                             int repeats, std::uint64_t stream_key);

// lambda = 1/2 sum |I_i - 1/N| of ensemble-averaged unit-sum intensities.
double localization_level(const std::vector<double>& mean_intensities);

// Maximum-likelihood Rayleigh vs half-normal fit over amplitude samples.
AmplitudeClassification classify_amplitude_distribution(const std::vector<double>& amplitudes);

std::string to_string(AmplitudeLabel label);

// Half-open bins over [lo, hi), last bin closed; samples outside the range
// are not counted.
Histogram histogram(const std::vector<double>& samples, int bins, double lo, double hi);

} // namespace ringtherm
