#include "ringtherm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ringtherm/errors.hpp"

namespace ringtherm {

void EnsembleRecord::validate() const {
    if (n_sites < 3) throw ConfigError("record has fewer than 3 sites");
    if (static_cast<int>(intensities.size()) != n_sites)
        throw ConfigError("record intensity count does not match n_sites");
    if (!couplings.empty() && static_cast<int>(couplings.size()) != n_sites)
        throw ConfigError("record coupling count does not match n_sites");
    if (excited_site < 0 || excited_site >= n_sites)
        throw ConfigError("record excited_site out of range");
    double sum = 0.0;
    for (double v : intensities) {
        if (!(v >= 0.0)) throw ConfigError("record has a negative intensity");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw ConfigError("record intensities sum to " + std::to_string(sum) + ", expected 1");
}

double g2(const std::vector<double>& samples) {
    if (samples.size() < 2) throw ComputeError("g2 needs at least 2 samples");
    double m1 = 0.0, m2 = 0.0;
    for (double x : samples) {
        if (!(x >= 0.0)) throw ComputeError("g2 samples must be nonnegative");
        m1 += x;
        m2 += x * x;
    }
    double n = static_cast<double>(samples.size());
    m1 /= n;
    m2 /= n;
    if (m1 == 0.0) throw ComputeError("g2 undefined for all-zero samples");
    return m2 / (m1 * m1);
}

namespace {

double excited_intensity(const EnsembleRecord& r) {
    double sum = 0.0;
    for (double v : r.intensities) sum += v;
    // defensively re-normalize; records are unit-sum by contract
    return r.intensities[static_cast<std::size_t>(r.excited_site)] / sum;
}

} // namespace

BootstrapReport bootstrap_g2(const std::vector<EnsembleRecord>& records, int resample_size,
                             int repeats, std::uint64_t stream_key) {
    if (records.empty()) throw ComputeError("bootstrap needs a nonempty ensemble");
    if (resample_size < 2) throw ComputeError("bootstrap resample size must be at least 2");
    if (repeats < 2) throw ComputeError("bootstrap needs at least 2 repeats");

    std::vector<double> pool(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) pool[i] = excited_intensity(records[i]);

    std::vector<double> estimates(static_cast<std::size_t>(repeats));
    std::vector<double> resample(static_cast<std::size_t>(resample_size));
    for (int rep = 0; rep < repeats; ++rep) {
        rng::Stream stream(rng::derive(stream_key, rng::tag::bootstrap,
                                       static_cast<std::uint64_t>(rep)));
        for (auto& x : resample) x = pool[stream.below(pool.size())];
        estimates[static_cast<std::size_t>(rep)] = g2(resample);
    }

    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(repeats);
    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= static_cast<double>(repeats - 1);

    BootstrapReport report;
    report.g2_mean = mean;
    report.g2_std = std::sqrt(var);
    report.resample_size = resample_size;
    report.repeats = repeats;
    return report;
}

double localization_level(const std::vector<double>& mean_intensities) {
    if (mean_intensities.empty()) throw ComputeError("empty intensity vector");
    double sum = 0.0;
    for (double v : mean_intensities) sum += v;
    if (std::abs(sum - 1.0) > 1e-6)
        throw ComputeError("localization level needs unit-sum intensities, got sum " +
                           std::to_string(sum));
    double n = static_cast<double>(mean_intensities.size());
    double acc = 0.0;
    for (double v : mean_intensities) acc += std::abs(v - 1.0 / n);
    return 0.5 * acc;
}

AmplitudeClassification classify_amplitude_distribution(const std::vector<double>& amplitudes) {
    if (amplitudes.size() < 50)
        throw ComputeError("amplitude classification needs at least 50 samples");
    double sum_sq = 0.0, sum_log = 0.0;
    double lo = amplitudes.front(), hi = amplitudes.front();
    for (double x : amplitudes) {
        if (!(x >= 0.0)) throw ComputeError("amplitudes must be nonnegative");
        sum_sq += x * x;
        sum_log += std::log(x);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (lo == hi) throw ComputeError("degenerate amplitude sample (all equal)");

    double n = static_cast<double>(amplitudes.size());
    // Rayleigh: pdf (x/s2) exp(-x^2/(2 s2)), MLE s2 = sum x^2 / (2n)
    double s2_rayleigh = sum_sq / (2.0 * n);
    double ll_rayleigh = sum_log - n * std::log(s2_rayleigh) - n;
    // half-normal: pdf sqrt(2/(pi s2)) exp(-x^2/(2 s2)), MLE s2 = sum x^2 / n
    double s2_halfnormal = sum_sq / n;
    double ll_halfnormal =
        n * (0.5 * std::log(2.0 / std::numbers::pi) - 0.5 * std::log(s2_halfnormal) - 0.5);

    double ratio = ll_rayleigh - ll_halfnormal;
    AmplitudeClassification out;
    out.label = ratio > 0.0 ? AmplitudeLabel::RayleighLike : AmplitudeLabel::GaussianLike;
    out.log_likelihood_ratio = ratio;
    return out;
}

std::string to_string(AmplitudeLabel label) {
    return label == AmplitudeLabel::RayleighLike ? "rayleigh-like" : "gaussian-like";
}

Histogram histogram(const std::vector<double>& samples, int bins, double lo, double hi) {
    if (bins < 1) throw ComputeError("histogram needs at least 1 bin");
    if (!(hi > lo)) throw ComputeError("empty histogram range");
    Histogram h;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    double width = (hi - lo) / static_cast<double>(bins);
    for (int b = 0; b <= bins; ++b)
        h.edges[static_cast<std::size_t>(b)] = lo + width * static_cast<double>(b);
    h.edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double x : samples) {
        if (x < lo || x > hi) continue;
        int b = x >= hi ? bins - 1 : static_cast<int>((x - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    return h;
}

} // namespace ringtherm
