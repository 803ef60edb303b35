#pragma once

#include <cstdint>

namespace cornplan {

/// SplitMix64 — small deterministic PRNG with identical output on every
/// platform, used wherever reproducibility from a seed is part of the
/// output contract (Monte Carlo trials, random ordination fallback).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Independent stream for a sub-task; trial i of a run seeded with s
    /// always sees the same stream regardless of execution order.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0xA0761D6478BD642Full + index));
        mixer.next_u64();
        return mixer;
    }

private:
    std::uint64_t state_;
};

} // namespace cornplan
