#pragma once

// SplitMix64. All randomness in the CLI and tests flows from one 64-bit seed.

#include <cstdint>
#include <cstdlib>
#include <string>

namespace fraclab {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

// FRACLAB_SEED, if set and parseable, overrides the configured seed.
inline std::uint64_t effective_seed(std::uint64_t configured) {
    const char* env = std::getenv("FRACLAB_SEED");
    if (!env || !*env) return configured;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(env, &pos, 0);
        if (pos == std::string(env).size()) return static_cast<std::uint64_t>(v);
    } catch (...) {
    }
    return configured;
}

}  // namespace fraclab
