#pragma once

#include <cstdint>
#include <random>

namespace frlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Per-trial seed: mix64(mix64(mix64(master) ^ grid) ^ trial). Independent of
/// scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid_index, std::uint64_t trial_index) noexcept {
    return mix64(mix64(mix64(master) ^ grid_index) ^ trial_index);
}

/// Seeded generator with platform-independent draws. The standard
/// distributions are implementation-defined, so the conversions live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., n-1}, unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal (Box-Muller).
    double normal();

    /// Uniform phase e^{i theta}, theta ~ U[0, 2 pi).
    double phase();

private:
    std::mt19937_64 engine_;
};

}  // namespace frlab
