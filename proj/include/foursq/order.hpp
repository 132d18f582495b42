#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "foursq/arith.hpp"
#include "foursq/ints.hpp"

namespace foursq {

// Largest prime whose global index we will materialize exactly. Counting
// primes past this takes minutes even with the sublinear counter, so bigger
// order keys are reported as a range error rather than stalling silently.
inline constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 40;

// The interval {p_1 = 2, p_2 = 3, ..., p_n} of the first n primes.
class PrimeInterval {
  public:
    static PrimeInterval first(std::size_t n);
    // Validates (against a sieve) that ps is exactly the first ps.size() primes.
    static PrimeInterval validated(std::vector<std::uint64_t> ps);

    std::size_t size() const { return primes_.size(); }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

  private:
    explicit PrimeInterval(std::vector<std::uint64_t> ps) : primes_(std::move(ps)) {}
    std::vector<std::uint64_t> primes_;
};

// pi(x): number of primes <= x. Table lookup for small x, Lucy_Hedgehog's
// O(x^(3/4)) counter (memoized) above the table. Throws RangeError past
// kIndexLimit.
std::uint64_t prime_count(std::uint64_t x);

// 1-based index of a prime in the global enumeration (2 -> 1, 3 -> 2, ...).
std::uint64_t prime_index(std::uint64_t p);

// k-th prime, 1-based. Table-backed; RangeError when k is past the table cap.
std::uint64_t nth_prime(std::uint64_t k);

// Sparse exponent form of a positive integer over the global prime
// enumeration: (prime index, exponent) pairs, ascending, exponents positive.
struct Factorization {
    struct Entry {
        std::uint64_t index;
        std::uint32_t exponent;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::vector<Entry> entries;
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

Factorization factorize(std::uint64_t n);
Factorization from_factors(const std::vector<PrimeFactor>& fs);

// Reassembled integer value (test support; needs every prime in the table).
UInt128 value(const Factorization& w);

// Index of the leading (largest) prime of w; 0 for w = 1.
std::uint64_t leading_index(const Factorization& w);

// Exponent of the leading prime of w; 0 for w = 1.
std::uint64_t leading_exponent(const Factorization& w);

// Termination measure: (leading prime index, its exponent), compared
// lexicographically. (0, 0) only for w = 1.
struct OrderKey {
    std::uint64_t L = 0;
    std::uint64_t nu = 0;
    friend auto operator<=>(const OrderKey&, const OrderKey&) = default;
};

OrderKey order_key(const Factorization& w);

// Key of a plain integer n >= 1. Only the leading prime gets indexed, so
// this stays cheap even when n has many factors.
OrderKey order_key_of(std::uint64_t n);

// Strict partial order: w1 before w2 iff key(w1) < key(w2) lexicographically.
bool precedes(const Factorization& w1, const Factorization& w2);

// Exponent-wise product. The resulting key follows the product law
// L(w2*w3) = max(L(w2), L(w3)) with nu added on ties.
Factorization multiply(const Factorization& w2, const Factorization& w3);

} // namespace foursq
