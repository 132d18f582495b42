#include <doctest.h>

#include "foursq/foursquares.hpp"
#include "foursq/rng.hpp"

using namespace foursq;

TEST_CASE("decompose edge cases") {
    CHECK(decompose(0, kDefaultSeed).q == Quadruple{{0, 0, 0, 0}});
    CHECK(decompose(1, kDefaultSeed).q == Quadruple{{1, 0, 0, 0}});
    CHECK(decompose(0, kDefaultSeed).certs.empty());
    CHECK_THROWS_AS(decompose((1ull << 62) + 1, kDefaultSeed), RangeError);
}

TEST_CASE("decompose folds prime quadruples") {
    Decomposition d12 = decompose(12, kDefaultSeed);
    CHECK(norm(d12.q) == 12);
    CHECK(d12.certs.size() == 2); // one certificate per distinct prime
    CHECK(d12.certs[0].p == 2);
    CHECK(d12.certs[1].p == 3);

    // 2^2 folds to (2,0,0,0) before the norm-3 factor joins.
    CHECK(compose(Quadruple{{1, 1, 0, 0}}, Quadruple{{1, 1, 0, 0}}) == Quadruple{{2, 0, 0, 0}});

    CHECK(norm(decompose(1ull << 62, kDefaultSeed).q) == UInt128(1) << 62);
}

TEST_CASE("decompose norm property") {
    for (std::uint64_t n = 0; n <= 3000; ++n) {
        Decomposition d = decompose(n, kDefaultSeed);
        REQUIRE(norm(d.q) == UInt128(n));
        for (const auto& cert : d.certs) REQUIRE(verify(cert).valid());
    }
}

TEST_CASE("oracle examples") {
    CHECK(oracle_decompose(7) == Quadruple{{2, 1, 1, 1}});
    CHECK(oracle_decompose(4) == Quadruple{{2, 0, 0, 0}});
    CHECK(oracle_decompose(15) == Quadruple{{3, 2, 1, 1}});
    CHECK(oracle_decompose(0) == Quadruple{{0, 0, 0, 0}});
    CHECK(oracle_decompose(1) == Quadruple{{1, 0, 0, 0}});
    CHECK_THROWS_AS(oracle_decompose(kOracleLimit + 1), RangeError);
}

TEST_CASE("oracle totality and ordering") {
    for (std::uint64_t n = 0; n <= 3000; ++n) {
        Quadruple q = oracle_decompose(n);
        REQUIRE(norm(q) == UInt128(n));
        REQUIRE(q[0] >= q[1]);
        REQUIRE(q[1] >= q[2]);
        REQUIRE(q[2] >= q[3]);
        REQUIRE(q[3] >= 0);
    }
    CHECK(norm(oracle_decompose(999999)) == 999999);
    CHECK(norm(oracle_decompose(1000000)) == 1000000);
}

TEST_CASE("count_representations") {
    CHECK(count_representations(0) == 1);
    CHECK(count_representations(1) == 8);
    CHECK(count_representations(2) == 24);
    CHECK_THROWS_AS(count_representations(kCountLimit + 1), RangeError);

    // Jacobi: r4(n) = 8 * sum of divisors of n not divisible by 4.
    for (std::uint64_t n = 1; n <= 300; ++n) {
        std::uint64_t expect = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0 && d % 4 != 0) expect += d;
        REQUIRE(count_representations(n) == 8 * expect);
    }
}

TEST_CASE("canonicalize") {
    CHECK(canonicalize(Quadruple{{-3, -2, 3, 1}}) == Quadruple{{3, 3, 2, 1}});
    CHECK(canonicalize(Quadruple{{0, 0, 0, 0}}) == Quadruple{{0, 0, 0, 0}});
    CHECK(canonicalize(Quadruple{{1, 2, -2, 0}}) == Quadruple{{2, 2, 1, 0}});
    Quadruple q{{-7, 4, 0, -1}};
    CHECK(norm(canonicalize(q)) == norm(q));
}
