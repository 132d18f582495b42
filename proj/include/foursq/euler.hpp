#pragma once

#include <array>
#include <cstddef>

#include "foursq/ints.hpp"

namespace foursq {

struct Quadruple {
    std::array<Int128, 4> x{};

    Int128& operator[](std::size_t i) { return x[i]; }
    const Int128& operator[](std::size_t i) const { return x[i]; }

    static Quadruple identity() { return {{1, 0, 0, 0}}; }

    friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

// x1^2 + x2^2 + x3^2 + x4^2, exact; throws OverflowError past 128 bits.
UInt128 norm(const Quadruple& q);

// Same sum carried in 256 bits, exact for every representable quadruple.
U256 norm256(const Quadruple& q);

// Quaternion-style composition: norm(compose(a, b)) = norm(a) * norm(b).
// Non-commutative; argument order is (outer solution, companion).
Quadruple compose(const Quadruple& a, const Quadruple& b);

} // namespace foursq
