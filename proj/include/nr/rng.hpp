#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace nr {

// ===== counter-mode SplitMix64 =====
//
// Every random draw in this project flows through this generator.  It is a
// pure function of (seed, counter), so a stream can be reproduced from its
// seed alone and independent streams can be derived by mixing indices into
// the seed.  That property is what makes check reports byte-reproducible.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/** Derive the seed for sub-stream `index` of a master stream. */
inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t next_u64() { return mix64(seed_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

    /// uniform in [0, 1): 53 mantissa bits, offset half a ulp so 0 is excluded
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// standard normal pair via Box-Muller
    std::pair<double, double> next_normal_pair() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    /// standard normal (one value; the pair's partner is not cached, by design:
    /// keeps the draw count a pure function of call count)
    double next_normal() { return next_normal_pair().first; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace nr
