#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace foursq {

using Int128 = __int128;
using UInt128 = unsigned __int128;

// Largest accepted input magnitude. Everything the descent computes from
// inputs at this cap stays exact under checked 128/256-bit arithmetic.
inline constexpr std::uint64_t kMaxInput = std::uint64_t{1} << 62;

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit add overflow");
    return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit sub overflow");
    return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit mul overflow");
    return r;
}

inline UInt128 checked_add_u(UInt128 a, UInt128 b) {
    UInt128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("unsigned 128-bit add overflow");
    return r;
}

inline UInt128 checked_mul_u(UInt128 a, UInt128 b) {
    UInt128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("unsigned 128-bit mul overflow");
    return r;
}

inline UInt128 abs_u128(Int128 x) {
    return x < 0 ? UInt128(0) - UInt128(x) : UInt128(x);
}

inline UInt128 gcd_u128(UInt128 a, UInt128 b) {
    while (b != 0) {
        UInt128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact 256-bit value as two 128-bit halves; just enough for the norm
// product identities (mul + compare, no division).
struct U256 {
    UInt128 hi = 0;
    UInt128 lo = 0;
    friend bool operator==(const U256&, const U256&) = default;
};

inline U256 mul_full_u128(UInt128 a, UInt128 b) {
    const UInt128 mask = ~UInt128(0) >> 64;
    UInt128 a0 = a & mask, a1 = a >> 64;
    UInt128 b0 = b & mask, b1 = b >> 64;
    UInt128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
    UInt128 mid = p01 + p10;
    UInt128 mid_carry = mid < p01 ? (UInt128(1) << 64) : 0;
    U256 r;
    r.lo = p00 + (mid << 64);
    r.hi = p11 + (mid >> 64) + mid_carry + (r.lo < p00 ? 1 : 0);
    return r;
}

inline U256 add_u256(U256 a, U256 b) {
    U256 r;
    r.lo = a.lo + b.lo;
    r.hi = a.hi + b.hi + (r.lo < a.lo ? 1 : 0);
    if (r.hi < a.hi) throw OverflowError("256-bit add overflow");
    return r;
}

std::string to_string(Int128 x);
std::string to_string(UInt128 x);

// Strict decimal parsing: optional leading '-', digits only, no leading
// zeros, no "-0". Throws std::invalid_argument on malformed input and
// RangeError when the value does not fit.
Int128 parse_i128(std::string_view s);
UInt128 parse_u128(std::string_view s);
std::uint64_t parse_u64(std::string_view s);

} // namespace foursq
