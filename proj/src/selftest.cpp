#include "foursq/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <vector>

#include "foursq/arith.hpp"
#include "foursq/certificate.hpp"
#include "foursq/descent.hpp"
#include "foursq/foursquares.hpp"
#include "foursq/order.hpp"
#include "foursq/rng.hpp"

namespace foursq {

namespace {

// Runs f over [0, count) on `jobs` threads; false as soon as any call fails.
template <typename F>
bool parallel_all(std::uint64_t count, unsigned jobs, F f) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (!f(i)) return false;
        return true;
    }
    std::atomic<bool> ok{true};
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        while (ok.load(std::memory_order_relaxed)) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) break;
            if (!f(i)) ok.store(false);
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return ok.load();
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t n = 2; n <= bound; ++n)
        if (is_prime(n)) ps.push_back(n);
    return ps;
}

bool descent_suite(std::uint64_t max, unsigned jobs, std::uint64_t seed, std::ostream& out) {
    auto primes = primes_up_to(max);
    bool ok = parallel_all(primes.size(), jobs, [&](std::uint64_t i) {
        std::uint64_t p = primes[i];
        try {
            auto pd = decompose_prime(p, seed);
            return norm(pd.q) == UInt128(p) && verify(pd.cert).valid();
        } catch (const std::exception&) {
            return false;
        }
    });
    out << (ok ? "[ok]  " : "[FAIL]") << " descent: " << primes.size()
        << " primes <= " << max << " decomposed and certified\n";
    return ok;
}

bool naturals_suite(std::uint64_t max, unsigned jobs, std::uint64_t seed, std::ostream& out) {
    std::uint64_t bound = std::min(max, kOracleLimit); // --max 1000000 is the extended sweep
    bool ok = parallel_all(bound + 1, jobs, [&](std::uint64_t n) {
        try {
            if (norm(decompose(n, seed).q) != UInt128(n)) return false;
            return norm(oracle_decompose(n)) == UInt128(n);
        } catch (const std::exception&) {
            return false;
        }
    });
    out << (ok ? "[ok]  " : "[FAIL]") << " naturals: every n <= " << bound
        << " decomposed, oracle agreed\n";
    return ok;
}

bool euler_suite(std::ostream& out) {
    Rng rng(42);
    bool ok = true;
    const int trials = 10000;
    for (int i = 0; i < trials && ok; ++i) {
        Quadruple a, b;
        for (int j = 0; j < 4; ++j) a[j] = rng.range(-1000000, 1000000);
        for (int j = 0; j < 4; ++j) b[j] = rng.range(-1000000, 1000000);
        ok = norm(compose(a, b)) == checked_mul_u(norm(a), norm(b)) &&
             compose(Quadruple::identity(), b) == b;
    }
    out << (ok ? "[ok]  " : "[FAIL]") << " euler: " << trials
        << " random pairs, norm multiplicative, identity neutral\n";
    return ok;
}

bool order_suite(std::uint64_t max, std::ostream& out) {
    const std::uint64_t W = std::min<std::uint64_t>(max, 300);
    std::vector<Factorization> fs(W + 1);
    std::vector<OrderKey> keys(W + 1);
    for (std::uint64_t w = 1; w <= W; ++w) {
        fs[w] = factorize(w);
        keys[w] = order_key(fs[w]);
    }
    bool ok = true;
    for (std::uint64_t w2 = 1; w2 <= W && ok; ++w2) {
        for (std::uint64_t w3 = 1; w3 <= W && ok; ++w3) {
            Factorization prod = multiply(fs[w2], fs[w3]);
            if (prod != factorize(w2 * w3)) ok = false;
            OrderKey kp = order_key(prod);
            if (kp.L != std::max(keys[w2].L, keys[w3].L)) ok = false;
            if (keys[w2].L < keys[w3].L && kp.nu != keys[w3].nu) ok = false;
            if (keys[w3].L < keys[w2].L && kp.nu != keys[w2].nu) ok = false;
            if (keys[w2].L == keys[w3].L && kp.nu != keys[w2].nu + keys[w3].nu) ok = false;
            if (precedes(fs[w2], fs[w3]) != (keys[w2] < keys[w3])) ok = false;
        }
    }
    for (std::uint64_t w = 1; w <= W && ok; ++w)
        if (precedes(fs[w], fs[w])) ok = false;
    for (std::uint64_t a = 1; a <= W && ok; ++a)
        for (std::uint64_t b = 1; b <= W && ok; ++b)
            for (std::uint64_t c = 1; c <= W && ok; ++c)
                if (keys[a] < keys[b] && keys[b] < keys[c] && !(keys[a] < keys[c])) ok = false;
    out << (ok ? "[ok]  " : "[FAIL]") << " order: product law and strict partial order, w <= " << W
        << "\n";
    return ok;
}

bool counts_suite(std::uint64_t max, std::ostream& out) {
    const std::uint64_t N = std::min<std::uint64_t>(max, 2000);
    bool ok = true;
    for (std::uint64_t n = 1; n <= N && ok; ++n) {
        std::uint64_t divisor_sum = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0 && d % 4 != 0) divisor_sum += d;
        ok = count_representations(n) == 8 * divisor_sum;
    }
    out << (ok ? "[ok]  " : "[FAIL]") << " counts: r4(n) = 8 * sum of divisors not divisible by 4, n <= "
        << N << "\n";
    return ok;
}

// One random integer field of the certificate, changed in place.
void mutate_certificate(Certificate& cert, Rng& rng) {
    std::uint64_t per_step = 29;
    std::uint64_t slots = 1 + 4 + 1 + per_step * cert.steps.size() + 4;
    std::uint64_t k = rng.below(slots);
    auto delta = [&]() -> std::int64_t {
        std::int64_t d = 1 + std::int64_t(rng.below(3));
        return rng.below(2) ? d : -d;
    };
    auto bump_u64 = [&](std::uint64_t& v) {
        std::int64_t d = delta();
        if (d < 0 && std::uint64_t(-d) > v) d = -d;
        v = std::uint64_t(std::int64_t(v) + d);
    };

    if (k == 0) {
        bump_u64(cert.p);
        return;
    }
    k -= 1;
    if (k < 4) {
        cert.initial_a[k] += delta();
        return;
    }
    k -= 4;
    if (k == 0) {
        bump_u64(cert.initial_a5);
        return;
    }
    k -= 1;
    if (k < per_step * cert.steps.size()) {
        auto& rec = cert.steps[k / per_step];
        std::uint64_t f = k % per_step;
        if (f < 4) {
            rec.a[f] += delta();
        } else if (f == 4) {
            bump_u64(rec.a5);
        } else if (f == 5) {
            bump_u64(rec.p_prime);
        } else if (f < 10) {
            auto& slot = rec.perm[f - 6];
            slot = std::uint8_t((slot + 1 + rng.below(3)) % 4);
        } else if (f < 14) {
            rec.b[f - 10] += delta();
        } else if (f == 14) {
            bump_u64(rec.b5);
        } else if (f < 19) {
            rec.c[f - 15] += delta();
        } else if (f == 19) {
            std::int64_t d = delta();
            if (d < 0 && UInt128(-d) > rec.d) d = -d;
            rec.d = UInt128(Int128(rec.d) + d);
        } else if (f < 24) {
            rec.a_next[f - 20] += delta();
        } else if (f == 24) {
            bump_u64(rec.a5_next);
        } else if (f == 25) {
            bump_u64(rec.key_before.L);
        } else if (f == 26) {
            bump_u64(rec.key_before.nu);
        } else if (f == 27) {
            bump_u64(rec.key_after.L);
        } else {
            bump_u64(rec.key_after.nu);
        }
        return;
    }
    k -= per_step * cert.steps.size();
    cert.result[k] += delta();
}

bool certificate_suite(std::uint64_t max, std::uint64_t seed, std::ostream& out) {
    if (max < 2) {
        out << "[ok]   certificates: skipped (no primes in range)\n";
        return true;
    }
    std::vector<Certificate> corpus;
    for (std::uint64_t p : {2ull, 7ull, 23ull, 97ull, 1009ull, 9973ull}) {
        if (p > max) break;
        corpus.push_back(decompose_prime(p, seed).cert);
    }
    bool ok = true;
    for (const auto& cert : corpus)
        if (deserialize(serialize(cert)) != cert || !verify(cert).valid()) ok = false;

    std::uint64_t trials = std::min<std::uint64_t>(max, 1000);
    Rng rng(seed ^ 0xc0ffee);
    for (std::uint64_t t = 0; t < trials && ok; ++t) {
        Certificate mutant = corpus[t % corpus.size()];
        mutate_certificate(mutant, rng);
        if (verify(mutant).valid()) ok = false;
    }
    out << (ok ? "[ok]  " : "[FAIL]") << " certificates: round-trips exact, " << trials
        << " corruptions all rejected\n";
    return ok;
}

} // namespace

bool run_selftest(const SelftestOptions& opt, std::ostream& out) {
    if (opt.max == 0) {
        out << "selftest: vacuous run (max = 0), nothing checked\n";
        return true;
    }
    bool ok = true;
    ok &= descent_suite(opt.max, opt.jobs, opt.seed, out);
    ok &= naturals_suite(opt.max, opt.jobs, opt.seed, out);
    ok &= euler_suite(out);
    ok &= order_suite(opt.max, out);
    ok &= counts_suite(opt.max, out);
    ok &= certificate_suite(opt.max, opt.seed, out);
    out << (ok ? "selftest: PASS" : "selftest: FAIL") << " (max = " << opt.max
        << ", jobs = " << opt.jobs << ")\n";
    return ok;
}

bool run_bench(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed, std::ostream& csv) {
    csv << "p,chain_length,max_a5,wall_time_ns\n";
    bool ok = true;
    for (std::uint64_t p = lo; p <= hi && p >= lo; ++p) {
        if (!is_prime(p)) continue;
        auto start = std::chrono::steady_clock::now();
        auto pd = decompose_prime(p, seed);
        auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::uint64_t max_a5 = pd.cert.initial_a5;
        for (const auto& rec : pd.cert.steps) max_a5 = std::max(max_a5, rec.a5);
        if (norm(pd.q) != UInt128(p)) ok = false;
        csv << p << "," << pd.cert.steps.size() << "," << max_a5 << "," << ns << "\n";
    }
    return ok;
}

} // namespace foursq
