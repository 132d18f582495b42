#include <doctest.h>

#include <algorithm>

#include "foursq/order.hpp"

using namespace foursq;

TEST_CASE("prime interval") {
    PrimeInterval five = PrimeInterval::first(5);
    CHECK(five.primes() == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
    CHECK(PrimeInterval::first(0).size() == 0);
    CHECK(PrimeInterval::validated({2, 3, 5, 7}).size() == 4);
    CHECK_THROWS_AS(PrimeInterval::validated({2, 3, 7}), std::invalid_argument);
    CHECK_THROWS_AS(PrimeInterval::validated({3, 5}), std::invalid_argument);
}

TEST_CASE("prime_count against known values") {
    CHECK(prime_count(1) == 0);
    CHECK(prime_count(2) == 1);
    CHECK(prime_count(1000) == 168);
    CHECK(prime_count(100000) == 9592);
    CHECK(prime_count(1000000) == 78498);
    // These run through the sublinear counter, not the table.
    CHECK(prime_count(10000000) == 664579);
    CHECK(prime_count(100000000) == 5761455);
    CHECK(prime_count(1000000000) == 50847534);
    CHECK(prime_count(10000000000ull) == 455052511);
}

TEST_CASE("prime_index and nth_prime are inverse") {
    CHECK(prime_index(2) == 1);
    CHECK(prime_index(3) == 2);
    CHECK(prime_index(23) == 9);
    CHECK(prime_index(2147483647) == 105097565);
    CHECK_THROWS_AS(prime_index(10), std::invalid_argument);
    for (std::uint64_t k = 1; k <= 2000; ++k) CHECK(prime_index(nth_prime(k)) == k);
}

TEST_CASE("factorize") {
    CHECK(factorize(1).entries.empty());
    Factorization f12 = factorize(12);
    CHECK(f12.entries == std::vector<Factorization::Entry>{{1, 2}, {2, 1}});
    CHECK(factorize(69).entries == std::vector<Factorization::Entry>{{2, 1}, {9, 1}});
    CHECK(value(factorize(69)) == 69);
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(value(factorize(n)) == UInt128(n));
}

TEST_CASE("leading index and exponent") {
    CHECK(leading_index(factorize(12)) == 2);
    CHECK(leading_index(factorize(32)) == 1);
    CHECK(leading_index(factorize(1)) == 0);
    CHECK(leading_exponent(factorize(12)) == 1);
    CHECK(leading_exponent(factorize(32)) == 5);
    CHECK(leading_exponent(factorize(9)) == 2);
    CHECK(leading_exponent(factorize(1)) == 0);

    // Keys agree with direct inspection of the factor list.
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        auto fs = factor_list(n);
        REQUIRE(leading_index(factorize(n)) == prime_index(fs.back().prime));
        REQUIRE(leading_exponent(factorize(n)) == fs.back().exponent);
        REQUIRE(order_key_of(n) == order_key(factorize(n)));
    }
}

TEST_CASE("order keys compare lexicographically") {
    CHECK(OrderKey{0, 0} < OrderKey{1, 1});
    CHECK(OrderKey{2, 1} < OrderKey{2, 2});
    CHECK(OrderKey{2, 5} < OrderKey{3, 1});
    CHECK_FALSE(OrderKey{2, 1} < OrderKey{2, 1});
    CHECK(order_key_of(1) == OrderKey{0, 0});
}

TEST_CASE("precedes examples") {
    CHECK(precedes(factorize(6), factorize(9)));        // equal L, nu 1 < 2
    CHECK(precedes(factorize(1024), factorize(3)));     // L 1 < 2
    CHECK_FALSE(precedes(factorize(6), factorize(12))); // both keys (2,1)
    CHECK_FALSE(precedes(factorize(12), factorize(6)));
    CHECK_FALSE(precedes(factorize(6), factorize(6)));
}

TEST_CASE("multiply merges exponents and obeys the product law") {
    CHECK(multiply(factorize(4), factorize(3)) == factorize(12));
    CHECK(order_key(multiply(factorize(4), factorize(3))) == OrderKey{2, 1});
    CHECK(order_key(multiply(factorize(3), factorize(3))) == OrderKey{2, 2});
    CHECK(multiply(factorize(1), factorize(360)) == factorize(360));

    for (std::uint64_t w2 = 1; w2 <= 120; ++w2) {
        for (std::uint64_t w3 = 1; w3 <= 120; ++w3) {
            Factorization prod = multiply(factorize(w2), factorize(w3));
            CHECK(prod == factorize(w2 * w3));
            OrderKey k2 = order_key_of(w2), k3 = order_key_of(w3), kp = order_key(prod);
            CHECK(kp.L == std::max(k2.L, k3.L));
            if (k2.L < k3.L) CHECK(kp.nu == k3.nu);
            if (k3.L < k2.L) CHECK(kp.nu == k2.nu);
            if (k2.L == k3.L) CHECK(kp.nu == k2.nu + k3.nu);
        }
    }
}
