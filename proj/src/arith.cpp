#include "foursq/arith.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace foursq {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((UInt128(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Sinclair's base set, deterministic below 2^64.
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (!strong_probable_prime(n, a)) return false;
    }
    return true;
}

UInt128 gcd_many(const std::vector<Int128>& xs) {
    if (xs.empty()) throw std::invalid_argument("gcd_many: empty list");
    UInt128 g = 0;
    for (Int128 x : xs) g = gcd_u128(g, abs_u128(x));
    return g;
}

std::int64_t least_absolute_residue(Int128 x, std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("least_absolute_residue: modulus must be >= 2");
    Int128 mm = Int128(m);
    Int128 r = x % mm;
    if (r < 0) r += mm;
    if (2 * r > mm) r -= mm;
    return std::int64_t(r);
}

namespace {

// Brent's cycle variant of Pollard rho; returns a nontrivial factor of n.
// n must be composite, odd, and free of tiny prime factors.
std::uint64_t rho_split(std::uint64_t n, Rng& rng) {
    while (true) {
        std::uint64_t y = 2 + rng.below(n - 3);
        std::uint64_t c = 1 + rng.below(n - 2);
        std::uint64_t g = 1, q = 1, x = 0, ys = 0;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                std::uint64_t limit = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < limit; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    std::uint64_t diff = x > y ? x - y : y - x;
                    q = mulmod(q, diff == 0 ? 1 : diff, n);
                }
                g = std::uint64_t(gcd_u128(q, n));
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time.
            g = 1;
            while (g == 1) {
                ys = (mulmod(ys, ys, n) + c) % n;
                std::uint64_t diff = x > ys ? x - ys : ys - x;
                g = std::uint64_t(gcd_u128(diff, n));
            }
        }
        if (g != n && g != 1) return g;
    }
}

void factor_into(std::uint64_t n, Rng& rng, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = rho_split(n, rng);
    factor_into(d, rng, out);
    factor_into(n / d, rng, out);
}

} // namespace

std::vector<PrimeFactor> factor_list(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_list: n must be >= 1");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull}) {
        while (n % p == 0) {
            n /= p;
            primes.push_back(p);
        }
    }
    // Trial division up to ~2^10 catches everything the desk-scale sweeps
    // produce; rho takes over for the rare large cofactor.
    for (std::uint64_t p = 71; p * p <= n && p < 1024; p += 2) {
        while (n % p == 0) {
            n /= p;
            primes.push_back(p);
        }
    }
    if (n > 1) {
        Rng rng(n ^ 0x9e3779b97f4a7c15ull);
        factor_into(n, rng, primes);
    }
    std::sort(primes.begin(), primes.end());
    std::vector<PrimeFactor> out;
    for (std::uint64_t p : primes) {
        if (!out.empty() && out.back().prime == p)
            ++out.back().exponent;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t t, std::uint64_t p, Rng& rng) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("sqrt_mod: p must be an odd prime");
    t %= p;
    if (t == 0) return 0;
    if (powmod(t, (p - 1) / 2, p) != 1) return std::nullopt;

    std::uint64_t root;
    if (p % 4 == 3) {
        root = powmod(t, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks. p-1 = q * 2^s with q odd.
        std::uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        std::uint64_t z;
        do {
            z = 2 + rng.below(p - 2);
        } while (powmod(z, (p - 1) / 2, p) != p - 1);
        std::uint64_t m = std::uint64_t(s);
        std::uint64_t c = powmod(z, q, p);
        std::uint64_t u = powmod(t, q, p);
        std::uint64_t r = powmod(t, (q + 1) / 2, p);
        while (u != 1) {
            std::uint64_t i = 0;
            std::uint64_t v = u;
            while (v != 1) {
                v = mulmod(v, v, p);
                ++i;
            }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            u = mulmod(u, c, p);
            r = mulmod(r, b, p);
        }
        root = r;
    }
    return std::min(root, p - root);
}

std::optional<UInt128> divide_product_by_square(UInt128 d, UInt128 f1, UInt128 f2, UInt128 f3) {
    if (d == 0) return std::nullopt;
    std::array<UInt128, 3> fs{f1, f2, f3};
    for (int pass = 0; pass < 2; ++pass) {
        UInt128 rem = d;
        for (auto& f : fs) {
            UInt128 g = gcd_u128(rem, f);
            rem /= g;
            f /= g;
        }
        if (rem != 1) return std::nullopt;
    }
    return checked_mul_u(checked_mul_u(fs[0], fs[1]), fs[2]);
}

Witness sqrt_minus_one_minus_square(std::uint64_t p, Rng& rng) {
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("sqrt_minus_one_minus_square: p must be an odd prime");
    for (std::uint64_t a = 0; a < p; ++a) {
        std::uint64_t t = (p - 1 + p - mulmod(a, a, p)) % p; // (-1 - a^2) mod p
        if (auto b = sqrt_mod(t, p, rng)) return {a, *b};
    }
    throw std::logic_error("sqrt_minus_one_minus_square: no witness found (unreachable)");
}

} // namespace foursq
