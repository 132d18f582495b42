#pragma once

#include <array>
#include <cstdint>

#include "foursq/certificate.hpp"
#include "foursq/euler.hpp"
#include "foursq/rng.hpp"

namespace foursq {

// Solution of a1^2 + a2^2 + a3^2 + a4^2 = p * a5 with gcd(a1..a4, a5) = 1
// and every prime factor of a5 below p.
struct ReducedSolution {
    std::uint64_t p = 0;
    Quadruple a;
    std::uint64_t a5 = 0;

    friend bool operator==(const ReducedSolution&, const ReducedSolution&) = default;
};

// Throws std::logic_error with a diagnostic if any invariant fails.
void validate(const ReducedSolution& sol);

// Constructive first solution: (1,1,0,0) for p = 2, otherwise the witness
// (a, b, 1, 0) of a^2 + b^2 + 1 = 0 (mod p), folded to least absolute
// residues and stripped of any common factor.
ReducedSolution initial_reduced_solution(std::uint64_t p, Rng& rng);

struct Companion {
    ReducedSolution sol;              // reduced solution for target p_prime
    std::array<std::uint8_t, 4> perm; // frame of sol relative to the outer a
};

// Companion solution for a prime divisor p_prime of sol.a5, congruent to
// (the permuted) sol.a modulo p_prime so the composed components all vanish
// mod p_prime. Odd p_prime: least absolute residues divided by their gcd.
// p_prime = 2: parity-paired permutation with (1,1,0,0).
Companion choose_companion(const ReducedSolution& sol, std::uint64_t p_prime);

struct StepResult {
    ReducedSolution next;
    DescentRecord record;
};

// One descent step over the leading prime of a5: compose with the companion,
// divide by the gcd of the composition, and strictly lower the order key.
StepResult descent_step(const ReducedSolution& sol);

struct PrimeDecomposition {
    Quadruple q;
    Certificate cert;
};

// Four-square decomposition of a prime with the full descent certificate.
PrimeDecomposition decompose_prime(std::uint64_t p, std::uint64_t seed);

} // namespace foursq
