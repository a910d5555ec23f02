#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ringtherm::rng {

// Counter-based splittable generator. Every random quantity in the library
// is drawn from a Stream whose key is derived from the master seed plus the
// indices that identify the draw site (cell, realization, repeat, ...), so
// results are independent of evaluation order and thread count.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t word) {
    return mix64(key ^ mix64(word + kGolden));
}

template <typename... Words>
inline constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t word, Words... rest) {
    return derive(derive(key, word), rest...);
}

// Domain separation tags for the independent stream families.
namespace tag {
inline constexpr std::uint64_t cell = 0x01;
inline constexpr std::uint64_t bootstrap = 0x02;
inline constexpr std::uint64_t size_study = 0x03;
inline constexpr std::uint64_t synthetic = 0x04;
} // namespace tag

class Stream {
  public:
    explicit Stream(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // in [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    // unbiased over [0, n)
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double exponential(double mean = 1.0) {
        return -mean * std::log1p(-uniform01());
    }

    double normal(double sigma = 1.0) {
        double u1 = 1.0 - uniform01();
        double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double rayleigh(double sigma = 1.0) {
        return sigma * std::sqrt(-2.0 * std::log1p(-uniform01()));
    }

  private:
    std::uint64_t state_;
};

} // namespace ringtherm::rng
