#pragma once

#include <cstdint>
#include <vector>

#include "foursq/certificate.hpp"
#include "foursq/euler.hpp"

namespace foursq {

inline constexpr std::uint64_t kOracleLimit = 1'000'000;
inline constexpr std::uint64_t kCountLimit = 10'000;

struct Decomposition {
    Quadruple q;
    std::vector<Certificate> certs; // one per distinct prime factor, ascending
};

// Four squares for an arbitrary natural: factor, decompose each prime once,
// and fold the quadruples with Euler composition (each prime repeated per
// its exponent). norm(q) = n exactly.
Decomposition decompose(std::uint64_t n, std::uint64_t seed);

// Independent search oracle: greedy descending scan over x1 >= x2 >= x3 >=
// x4 >= 0, first hit wins. Exhaustion would disprove the theorem, so it
// throws std::logic_error instead of returning a sentinel.
Quadruple oracle_decompose(std::uint64_t n);

// Number of ordered, signed quadruples with norm n, by exhaustive
// convolution of two-square counts.
std::uint64_t count_representations(std::uint64_t n);

// Absolute values sorted descending; norm preserved.
Quadruple canonicalize(const Quadruple& q);

} // namespace foursq
