#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "foursq/euler.hpp"
#include "foursq/order.hpp"

namespace foursq {

// One descent step, with enough witnesses to re-derive every identity it
// claims. Coordinates of b live in the permuted frame of a (the permutation
// is the identity unless p_prime = 2).
struct DescentRecord {
    std::uint32_t step_index = 0; // 1-based; implicit in the serialized form
    Quadruple a;
    std::uint64_t a5 = 0;
    std::uint64_t p_prime = 0;
    std::array<std::uint8_t, 4> perm{0, 1, 2, 3};
    Quadruple b;
    std::uint64_t b5 = 0;
    Quadruple c;
    UInt128 d = 0;
    Quadruple a_next;
    std::uint64_t a5_next = 0;
    OrderKey key_before;
    OrderKey key_after;
    bool residual_gcd_applied = false;

    friend bool operator==(const DescentRecord&, const DescentRecord&) = default;
};

// Full proof object for one prime: the initial solution, the descent chain
// down to a5 = 1, and the resulting quadruple with norm p.
struct Certificate {
    std::uint64_t p = 0;
    std::uint64_t seed = 0;
    Quadruple initial_a;
    std::uint64_t initial_a5 = 0;
    std::vector<DescentRecord> steps;
    Quadruple result;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct VerificationFailure {
    int step;          // -1 for certificate-level checks
    std::string check; // stable identifier, e.g. "composition_norm"
    std::string detail;
};

struct VerificationReport {
    std::vector<VerificationFailure> failures;
    bool valid() const { return failures.empty(); }
    std::string summary() const;
};

// Recomputes every identity of the chain from the stored fields alone;
// shares only the arithmetic primitives with the generator.
VerificationReport verify(const Certificate& cert);

struct CertificateParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string serialize(const Certificate& cert);
std::string serialize(const std::vector<Certificate>& certs);

// Strict parse: fixed field set, integers as canonical decimal strings,
// unknown fields rejected. Throws CertificateParseError naming the path.
Certificate deserialize(std::string_view text);

// Accepts either a single certificate object or an array of them.
std::vector<Certificate> deserialize_any(std::string_view text);

} // namespace foursq
