#pragma once

// Counter-based seeding. Every Monte-Carlo path i of a run with master seed
// s draws from its own SplitMix64 stream seeded with derive_seed(s, i), so
// tallies do not depend on evaluation order or thread count.
//
// Test vectors (reference SplitMix64 finaliser):
//   splitmix64_mix(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF
//   derive_seed(0, 0)                  == 0xE220A8397B1DCDAF

#include <cstdint>

namespace geodlab {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed + kGolden * (index + 1));
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        return splitmix64_mix(state_);
    }
    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~0ULL; }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform on {0, ..., n-1} by rejection, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % n;
    }

private:
    std::uint64_t state_;
};

} // namespace geodlab
