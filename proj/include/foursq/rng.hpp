#pragma once

#include <cstdint>
#include <random>

namespace foursq {

inline constexpr std::uint64_t kDefaultSeed = 0;

// Deterministic random source. Every randomized routine takes one of these
// explicitly so a run is fully reproducible from its seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform value in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }

    // Uniform value in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace foursq
