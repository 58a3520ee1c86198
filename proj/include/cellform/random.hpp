#pragma once

#include <cstdint>
#include <random>

namespace cellform {

// Reproducible stream: std::mt19937_64 seeded with the raw 64-bit seed.
// uniform01() = (next() >> 11) * 2^-53, so every platform sees the same
// doubles for the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    // Uniform integer in [0, n) by the multiply-high method.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cellform
