#include <doctest.h>

#include <string>

#include "foursq/certificate.hpp"
#include "foursq/descent.hpp"
#include "foursq/rng.hpp"

using namespace foursq;

namespace {

Certificate cert23() {
    return decompose_prime(23, kDefaultSeed).cert;
}

bool has_failure(const VerificationReport& report, const std::string& check) {
    for (const auto& f : report.failures)
        if (f.check == check) return true;
    return false;
}

} // namespace

TEST_CASE("serialization round-trips") {
    for (std::uint64_t p : {2ull, 7ull, 23ull, 97ull, 65537ull}) {
        Certificate cert = decompose_prime(p, kDefaultSeed).cert;
        CHECK(deserialize(serialize(cert)) == cert);
    }
    Certificate c = cert23();
    std::vector<Certificate> multi{c, decompose_prime(7, kDefaultSeed).cert};
    CHECK(deserialize_any(serialize(multi)) == multi);
    CHECK(deserialize_any(serialize(c)) == std::vector<Certificate>{c});
}

TEST_CASE("p = 23 certificate content is frozen") {
    Certificate cert = cert23();
    CHECK(cert.p == 23);
    CHECK(cert.seed == 0);
    CHECK(cert.initial_a == Quadruple{{2, 8, 1, 0}});
    CHECK(cert.initial_a5 == 3);
    REQUIRE(cert.steps.size() == 1);
    const DescentRecord& rec = cert.steps[0];
    CHECK(rec.p_prime == 3);
    CHECK(rec.b == Quadruple{{-1, -1, 1, 0}});
    CHECK(rec.b5 == 1);
    CHECK(rec.c == Quadruple{{-9, 6, 3, 9}});
    CHECK(rec.d == 3);
    CHECK(rec.a_next == Quadruple{{-3, 2, 1, 3}});
    CHECK(rec.a5_next == 1);
    CHECK(rec.key_before == OrderKey{2, 1});
    CHECK(rec.key_after == OrderKey{0, 0});
    CHECK(cert.result == Quadruple{{-3, 2, 1, 3}});
}

TEST_CASE("deserialize rejects malformed input") {
    CHECK_THROWS_WITH_AS(deserialize("{}"), "certificate: missing required field 'version'",
                         CertificateParseError);
    CHECK_THROWS_AS(deserialize("not json"), CertificateParseError);
    CHECK_THROWS_AS(deserialize("[1,2]"), CertificateParseError);
    CHECK_THROWS_AS(deserialize(""), CertificateParseError);

    std::string good = serialize(cert23());
    CHECK_THROWS_AS(deserialize(good + "trailing"), CertificateParseError);

    // Field-path diagnostics.
    std::string bad_exp = good;
    auto pos = bad_exp.find("\"3\"");           // initial a5 value
    bad_exp.replace(pos, 3, "\"x3\"");
    try {
        deserialize(bad_exp);
        FAIL("expected CertificateParseError");
    } catch (const CertificateParseError& e) {
        CHECK(std::string(e.what()).find("initial.a5") != std::string::npos);
    }

    std::string unknown = good;
    unknown.replace(unknown.find("\"seed\""), 6, "\"sead\"");
    try {
        deserialize(unknown);
        FAIL("expected CertificateParseError");
    } catch (const CertificateParseError& e) {
        CHECK(std::string(e.what()).find("unknown field") != std::string::npos);
    }

    std::string bad_version = good;
    bad_version.replace(bad_version.find("\"version\": 1"), 12, "\"version\": 2");
    CHECK_THROWS_AS(deserialize(bad_version), CertificateParseError);

    // Non-canonical decimals are parse errors, not verification failures.
    std::string padded = good;
    padded.replace(padded.find("\"23\""), 4, "\"023\"");
    CHECK_THROWS_AS(deserialize(padded), CertificateParseError);
}

TEST_CASE("verify accepts generated certificates") {
    for (std::uint64_t p : {2ull, 3ull, 7ull, 23ull, 9973ull}) {
        Certificate cert = decompose_prime(p, kDefaultSeed).cert;
        VerificationReport report = verify(cert);
        CHECK(report.valid());
        CHECK(report.summary() == "VALID");
    }
}

TEST_CASE("empty-steps certificate for p = 2 is valid") {
    Certificate cert;
    cert.p = 2;
    cert.seed = 0;
    cert.initial_a = {{1, 1, 0, 0}};
    cert.initial_a5 = 1;
    cert.result = {{1, 1, 0, 0}};
    CHECK(verify(cert).valid());
}

TEST_CASE("perturbing c is flagged at the norm identity") {
    Certificate cert = cert23();
    cert.steps[0].c[1] += 1;
    VerificationReport report = verify(cert);
    CHECK_FALSE(report.valid());
    CHECK(has_failure(report, "composition_norm"));
    CHECK(has_failure(report, "compose_consistency"));
    CHECK(report.failures.front().step == 1);
}

TEST_CASE("targeted corruptions hit their checks") {
    {
        Certificate cert = cert23();
        cert.steps[0].p_prime = 2;
        CHECK(has_failure(verify(cert), "p_prime_divides"));
    }
    {
        Certificate cert = cert23();
        cert.steps[0].perm = {1, 0, 2, 3};
        CHECK(has_failure(verify(cert), "perm_canonical"));
    }
    {
        Certificate cert = cert23();
        cert.steps[0].perm = {0, 0, 2, 3};
        CHECK(has_failure(verify(cert), "perm_valid"));
    }
    {
        Certificate cert = cert23();
        cert.steps[0].d = 9;
        CHECK(has_failure(verify(cert), "d_gcd"));
    }
    {
        Certificate cert = cert23();
        cert.steps[0].key_before = {2, 2};
        CHECK(has_failure(verify(cert), "key_before"));
    }
    {
        Certificate cert = cert23();
        cert.steps[0].key_after = {2, 1}; // no longer a strict decrease
        auto report = verify(cert);
        CHECK(has_failure(report, "key_after"));
        CHECK(has_failure(report, "key_decrease"));
    }
    {
        Certificate cert = cert23();
        cert.result[0] = 3; // same norm, different quadruple
        CHECK(has_failure(verify(cert), "result_match"));
    }
    {
        Certificate cert = cert23();
        cert.initial_a5 = 6; // breaks the norm identity and the chain link
        auto report = verify(cert);
        CHECK_FALSE(report.valid());
        CHECK(has_failure(report, "initial_norm"));
    }
    {
        // A5 with a factor >= p: build a fake one-step-less certificate.
        Certificate cert;
        cert.p = 5;
        cert.initial_a = {{5, 10, 25, 5}};
        cert.initial_a5 = 155; // 5 * 31, and gcd with coords is 5
        cert.result = {{5, 10, 25, 5}};
        auto report = verify(cert);
        CHECK(has_failure(report, "initial_gcd"));
        CHECK(has_failure(report, "initial_a5_precedes"));
        CHECK(has_failure(report, "initial_a5_range"));
        CHECK(has_failure(report, "final_a5"));
    }
}

TEST_CASE("chain linkage is enforced") {
    Certificate cert = decompose_prime(9973, kDefaultSeed).cert;
    REQUIRE(cert.steps.size() >= 2);
    cert.steps[1].a[0] += 1;
    CHECK(has_failure(verify(cert), "chain_link"));
}
