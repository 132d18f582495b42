#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "foursq/ints.hpp"
#include "foursq/rng.hpp"

namespace foursq {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin, correct for all n < 2^64.
bool is_prime(std::uint64_t n);

// gcd of the absolute values; gcd of an all-zero list is 0.
UInt128 gcd_many(const std::vector<Int128>& xs);

// Representative r of x mod m with -m/2 < r <= m/2.
std::int64_t least_absolute_residue(Int128 x, std::uint64_t m);

struct PrimeFactor {
    std::uint64_t prime;
    std::uint32_t exponent;
    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

// Exact factorization of n >= 1, primes ascending. Trial division for small
// factors, then Pollard-Brent rho with Miller-Rabin certification of every
// factor. Deterministic (internal rho randomness is seeded from n).
std::vector<PrimeFactor> factor_list(std::uint64_t n);

// Square root of t modulo an odd prime p (Tonelli-Shanks); returns the
// smaller of the two roots, or nullopt when t is a non-residue. rng drives
// the non-residue search only.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t t, std::uint64_t p, Rng& rng);

struct Witness {
    std::uint64_t a;
    std::uint64_t b;
};

// Solves a^2 + b^2 + 1 = 0 (mod p) for an odd prime p, scanning a = 0,1,2,...
// and extracting b as a modular square root. Always terminates: {a^2} and
// {-1-b^2} each cover (p+1)/2 residues, so they intersect.
Witness sqrt_minus_one_minus_square(std::uint64_t p, Rng& rng);

// Checks d^2 | f1*f2*f3 without forming the full product (d is stripped
// through the factors twice); returns the exact quotient on success.
std::optional<UInt128> divide_product_by_square(UInt128 d, UInt128 f1, UInt128 f2, UInt128 f3);

} // namespace foursq
