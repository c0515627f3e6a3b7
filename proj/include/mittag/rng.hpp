#pragma once

#include <cstdint>

namespace mittag {

/// Counter-based deterministic generator. Each (seed, counter) pair opens an
/// independent stream, so trial i of a randomized run can be reproduced in
/// isolation and trials may execute in any order (or in parallel) without
/// changing the drawn values.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t counter)
        : state_(mix(seed ^ mix(counter * 0x9E3779B97F4A7C15ULL + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (lo, hi] (half-open at the low end).
    double uniform_left_open(double lo, double hi) { return hi - uniform01() * (hi - lo); }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace mittag
