#include "foursq/euler.hpp"

namespace foursq {

UInt128 norm(const Quadruple& q) {
    UInt128 sum = 0;
    for (Int128 v : q.x) {
        UInt128 a = abs_u128(v);
        sum = checked_add_u(sum, checked_mul_u(a, a));
    }
    return sum;
}

U256 norm256(const Quadruple& q) {
    U256 sum;
    for (Int128 v : q.x) {
        UInt128 a = abs_u128(v);
        sum = add_u256(sum, mul_full_u128(a, a));
    }
    return sum;
}

Quadruple compose(const Quadruple& a, const Quadruple& b) {
    auto mul = checked_mul;
    auto add = checked_add;
    auto sub = checked_sub;
    Quadruple c;
    c[0] = add(add(mul(a[0], b[0]), mul(a[1], b[1])), add(mul(a[2], b[2]), mul(a[3], b[3])));
    c[1] = add(sub(mul(a[0], b[1]), mul(a[1], b[0])), sub(mul(a[2], b[3]), mul(a[3], b[2])));
    c[2] = add(sub(mul(a[0], b[2]), mul(a[2], b[0])), sub(mul(a[3], b[1]), mul(a[1], b[3])));
    c[3] = add(sub(mul(a[0], b[3]), mul(a[3], b[0])), sub(mul(a[1], b[2]), mul(a[2], b[1])));
    return c;
}

} // namespace foursq
