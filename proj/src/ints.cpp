#include "foursq/ints.hpp"

#include <algorithm>

namespace foursq {

std::string to_string(UInt128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x != 0) {
        s.push_back(char('0' + int(x % 10)));
        x /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(Int128 x) {
    if (x < 0) return "-" + to_string(abs_u128(x));
    return to_string(UInt128(x));
}

namespace {

UInt128 parse_magnitude(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw std::invalid_argument("empty decimal integer");
    if (digits.size() > 1 && digits[0] == '0')
        throw std::invalid_argument("leading zeros in decimal integer: " + std::string(whole));
    UInt128 v = 0;
    const UInt128 max = ~UInt128(0);
    for (char ch : digits) {
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("not a decimal integer: " + std::string(whole));
        unsigned d = unsigned(ch - '0');
        if (v > (max - d) / 10) throw RangeError("decimal integer out of range: " + std::string(whole));
        v = v * 10 + d;
    }
    return v;
}

} // namespace

UInt128 parse_u128(std::string_view s) {
    return parse_magnitude(s, s);
}

Int128 parse_i128(std::string_view s) {
    bool neg = !s.empty() && s[0] == '-';
    UInt128 mag = parse_magnitude(neg ? s.substr(1) : s, s);
    if (neg && mag == 0) throw std::invalid_argument("negative zero: " + std::string(s));
    const UInt128 lim = UInt128(1) << 127;
    if (neg) {
        if (mag > lim) throw RangeError("decimal integer out of range: " + std::string(s));
        return -Int128(mag - 1) - 1;
    }
    if (mag >= lim) throw RangeError("decimal integer out of range: " + std::string(s));
    return Int128(mag);
}

std::uint64_t parse_u64(std::string_view s) {
    UInt128 v = parse_u128(s);
    if (v > ~std::uint64_t{0}) throw RangeError("decimal integer out of range: " + std::string(s));
    return std::uint64_t(v);
}

} // namespace foursq
