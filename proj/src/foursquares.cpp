#include "foursq/foursquares.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "foursq/arith.hpp"
#include "foursq/descent.hpp"

namespace foursq {

namespace {

std::uint64_t isqrt64(std::uint64_t x) {
    if (x == 0) return 0;
    auto r = std::uint64_t(std::sqrt(double(x)));
    while (r > 0 && r > x / r) --r;
    while (r + 1 <= x / (r + 1)) ++r;
    return r;
}

// Smallest v with k * v^2 >= rem.
std::uint64_t lower_bound_coord(std::uint64_t rem, std::uint64_t k) {
    std::uint64_t v = isqrt64(rem / k);
    while (k * v * v < rem) ++v;
    return v;
}

} // namespace

Decomposition decompose(std::uint64_t n, std::uint64_t seed) {
    if (n > kMaxInput) throw RangeError("decompose: n exceeds 2^62");
    if (n == 0) return {Quadruple{{0, 0, 0, 0}}, {}};
    if (n == 1) return {Quadruple{{1, 0, 0, 0}}, {}};

    Decomposition out;
    Quadruple acc = Quadruple::identity();
    for (const auto& f : factor_list(n)) {
        PrimeDecomposition pd = decompose_prime(f.prime, seed);
        out.certs.push_back(std::move(pd.cert));
        for (std::uint32_t e = 0; e < f.exponent; ++e) acc = compose(acc, pd.q);
    }
    out.q = acc;
    if (norm(out.q) != UInt128(n)) throw std::logic_error("decompose: norm mismatch (bug)");
    return out;
}

Quadruple oracle_decompose(std::uint64_t n) {
    if (n > kOracleLimit) throw RangeError("oracle_decompose: n exceeds the oracle range");
    if (n == 0) return {{0, 0, 0, 0}};

    for (std::uint64_t x1 = isqrt64(n), lo1 = lower_bound_coord(n, 4); x1 + 1 > lo1; --x1) {
        std::uint64_t r1 = n - x1 * x1;
        std::uint64_t hi2 = std::min(x1, isqrt64(r1));
        for (std::uint64_t x2 = hi2, lo2 = lower_bound_coord(r1, 3); x2 + 1 > lo2; --x2) {
            std::uint64_t r2 = r1 - x2 * x2;
            std::uint64_t hi3 = std::min(x2, isqrt64(r2));
            for (std::uint64_t x3 = hi3, lo3 = lower_bound_coord(r2, 2); x3 + 1 > lo3; --x3) {
                std::uint64_t r3 = r2 - x3 * x3;
                std::uint64_t x4 = isqrt64(r3);
                if (x4 * x4 == r3 && x4 <= x3)
                    return {{Int128(x1), Int128(x2), Int128(x3), Int128(x4)}};
                if (x3 == 0) break;
            }
            if (x2 == 0) break;
        }
        if (x1 == 0) break;
    }
    throw std::logic_error("oracle_decompose: no representation found for " + std::to_string(n));
}

std::uint64_t count_representations(std::uint64_t n) {
    if (n > kCountLimit) throw RangeError("count_representations: n exceeds the count range");
    if (n == 0) return 1;

    // r2[k] = number of ordered signed pairs with x^2 + y^2 = k.
    std::vector<std::uint64_t> r2(n + 1, 0);
    std::uint64_t root = isqrt64(n);
    for (std::uint64_t x = 0; x <= root; ++x) {
        for (std::uint64_t y = 0; x * x + y * y <= n; ++y) {
            std::uint64_t mult = (x > 0 ? 2 : 1) * (y > 0 ? 2 : 1);
            r2[x * x + y * y] += mult;
        }
    }
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k <= n; ++k) total += r2[k] * r2[n - k];
    return total;
}

Quadruple canonicalize(const Quadruple& q) {
    Quadruple out;
    for (int i = 0; i < 4; ++i) out[i] = Int128(abs_u128(q[i]));
    std::sort(out.x.begin(), out.x.end(), [](Int128 a, Int128 b) { return a > b; });
    return out;
}

} // namespace foursq
