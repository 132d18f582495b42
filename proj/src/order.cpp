#include "foursq/order.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace foursq {

namespace {

std::uint64_t isqrt64(std::uint64_t x) {
    if (x == 0) return 0;
    auto r = std::uint64_t(std::sqrt(double(x)));
    while (r > 0 && r > x / r) --r;
    while (r + 1 <= x / (r + 1)) ++r;
    return r;
}

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(std::uint32_t(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

constexpr std::uint64_t kTableBase = std::uint64_t{1} << 20;
constexpr std::uint64_t kTableCap = std::uint64_t{1} << 27;

struct PrimeTable {
    std::shared_mutex mutex;
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;

    void ensure(std::uint64_t want) {
        {
            std::shared_lock lock(mutex);
            if (limit >= want) return;
        }
        std::unique_lock lock(mutex);
        if (limit >= want) return;
        std::uint64_t target = std::max(want, kTableBase);
        primes = sieve_primes(target);
        limit = target;
    }
};

PrimeTable& table() {
    static PrimeTable t;
    return t;
}

// Lucy_Hedgehog's prime-counting recurrence over the quotient set of x.
std::uint64_t lucy_pi(std::uint64_t x) {
    std::uint64_t r = isqrt64(x);
    std::vector<std::uint64_t> small(r + 1), big(r + 1);
    for (std::uint64_t v = 1; v <= r; ++v) small[v] = v - 1;
    for (std::uint64_t i = 1; i <= r; ++i) big[i] = x / i - 1;
    for (std::uint64_t p = 2; p <= r; ++p) {
        if (small[p] == small[p - 1]) continue;
        std::uint64_t sp = small[p - 1];
        std::uint64_t p2 = p * p;
        std::uint64_t imax = std::min(r, x / p2);
        for (std::uint64_t i = 1; i <= imax; ++i) {
            std::uint64_t ip = i * p;
            big[i] -= (ip <= r ? big[ip] : small[x / ip]) - sp;
        }
        for (std::uint64_t v = r; v >= p2; --v) small[v] -= small[v / p] - sp;
    }
    return big[1];
}

std::uint64_t counted_above_table(std::uint64_t x) {
    static std::mutex memo_mutex;
    static std::map<std::uint64_t, std::uint64_t> memo;
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = memo.find(x); it != memo.end()) return it->second;
    }
    std::uint64_t result = lucy_pi(x);
    std::lock_guard lock(memo_mutex);
    memo.emplace(x, result);
    return result;
}

} // namespace

std::uint64_t prime_count(std::uint64_t x) {
    if (x < 2) return 0;
    auto& t = table();
    t.ensure(std::min(std::max(x, std::uint64_t{2}), kTableBase));
    {
        std::shared_lock lock(t.mutex);
        if (x <= t.limit) {
            auto it = std::upper_bound(t.primes.begin(), t.primes.end(), x);
            return std::uint64_t(it - t.primes.begin());
        }
    }
    if (x > kIndexLimit)
        throw RangeError("prime_count: " + std::to_string(x) + " exceeds the order-index limit");
    return counted_above_table(x);
}

std::uint64_t prime_index(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("prime_index: " + std::to_string(p) + " is not prime");
    return prime_count(p);
}

std::uint64_t nth_prime(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("nth_prime: index is 1-based");
    auto& t = table();
    t.ensure(kTableBase);
    std::uint64_t want = kTableBase;
    while (true) {
        {
            std::shared_lock lock(t.mutex);
            if (t.primes.size() >= k) return t.primes[k - 1];
            want = t.limit * 2;
        }
        if (want > kTableCap)
            throw RangeError("nth_prime: index " + std::to_string(k) + " is past the prime table cap");
        t.ensure(want);
    }
}

PrimeInterval PrimeInterval::first(std::size_t n) {
    std::vector<std::uint64_t> ps;
    ps.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) ps.push_back(nth_prime(i));
    return PrimeInterval(std::move(ps));
}

PrimeInterval PrimeInterval::validated(std::vector<std::uint64_t> ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i] != nth_prime(i + 1))
            throw std::invalid_argument("PrimeInterval: entry " + std::to_string(i) +
                                        " is not the expected prime");
    }
    return PrimeInterval(std::move(ps));
}

Factorization from_factors(const std::vector<PrimeFactor>& fs) {
    Factorization w;
    w.entries.reserve(fs.size());
    for (const auto& f : fs) w.entries.push_back({prime_index(f.prime), f.exponent});
    return w;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    if (n == 1) return {};
    return from_factors(factor_list(n));
}

UInt128 value(const Factorization& w) {
    UInt128 v = 1;
    for (const auto& e : w.entries) {
        UInt128 p = nth_prime(e.index);
        for (std::uint32_t i = 0; i < e.exponent; ++i) v = checked_mul_u(v, p);
    }
    return v;
}

std::uint64_t leading_index(const Factorization& w) {
    return w.entries.empty() ? 0 : w.entries.back().index;
}

std::uint64_t leading_exponent(const Factorization& w) {
    return w.entries.empty() ? 0 : w.entries.back().exponent;
}

OrderKey order_key(const Factorization& w) {
    return {leading_index(w), leading_exponent(w)};
}

OrderKey order_key_of(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("order_key_of: n must be >= 1");
    if (n == 1) return {};
    auto fs = factor_list(n);
    return {prime_index(fs.back().prime), fs.back().exponent};
}

bool precedes(const Factorization& w1, const Factorization& w2) {
    return order_key(w1) < order_key(w2);
}

Factorization multiply(const Factorization& w2, const Factorization& w3) {
    Factorization out;
    auto a = w2.entries.begin(), b = w3.entries.begin();
    while (a != w2.entries.end() || b != w3.entries.end()) {
        if (b == w3.entries.end() || (a != w2.entries.end() && a->index < b->index)) {
            out.entries.push_back(*a++);
        } else if (a == w2.entries.end() || b->index < a->index) {
            out.entries.push_back(*b++);
        } else {
            out.entries.push_back({a->index, a->exponent + b->exponent});
            ++a;
            ++b;
        }
    }
    return out;
}

} // namespace foursq
