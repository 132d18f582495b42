#include "foursq/certificate.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "foursq/arith.hpp"

namespace foursq {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string dec(Int128 v) { return to_string(v); }
std::string dec(UInt128 v) { return to_string(v); }
std::string dec(std::uint64_t v) { return std::to_string(v); }

ordered_json five(const Quadruple& q, std::uint64_t last) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < 4; ++i) a.push_back(dec(q[i]));
    a.push_back(dec(last));
    return a;
}

ordered_json four(const Quadruple& q) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < 4; ++i) a.push_back(dec(q[i]));
    return a;
}

ordered_json key_json(const OrderKey& k) {
    return ordered_json{{"L", k.L}, {"nu", k.nu}};
}

ordered_json cert_json(const Certificate& cert) {
    ordered_json j;
    j["version"] = 1;
    j["p"] = dec(cert.p);
    j["seed"] = dec(cert.seed);
    j["initial"] = ordered_json{{"a", four(cert.initial_a)}, {"a5", dec(cert.initial_a5)}};
    ordered_json steps = ordered_json::array();
    for (const auto& r : cert.steps) {
        ordered_json s;
        s["a"] = five(r.a, r.a5);
        s["p_prime"] = dec(r.p_prime);
        s["perm"] = ordered_json{r.perm[0], r.perm[1], r.perm[2], r.perm[3]};
        s["b"] = five(r.b, r.b5);
        s["c"] = four(r.c);
        s["d"] = dec(r.d);
        s["a_next"] = five(r.a_next, r.a5_next);
        s["key_before"] = key_json(r.key_before);
        s["key_after"] = key_json(r.key_after);
        s["residual_gcd_applied"] = r.residual_gcd_applied;
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    j["result"] = four(cert.result);
    return j;
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw CertificateParseError(path + ": " + msg);
}

const json& field(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field '") + key + "'");
    return *it;
}

void check_object(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(keys.begin(), keys.end(),
                         [&](const char* k) { return it.key() == k; }) == keys.end())
            fail(path, "unknown field '" + it.key() + "'");
    }
}

Int128 int_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a decimal string");
    try {
        return parse_i128(v.get_ref<const std::string&>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

UInt128 u128_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a decimal string");
    try {
        return parse_u128(v.get_ref<const std::string&>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

std::uint64_t u64_string(const json& v, const std::string& path) {
    UInt128 x = u128_string(v, path);
    if (x > ~std::uint64_t{0}) fail(path, "out of range");
    return std::uint64_t(x);
}

std::uint64_t uint_number(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

bool bool_value(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected a boolean");
    return v.get<bool>();
}

Quadruple quad(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 4) fail(path, "expected an array of 4 decimal strings");
    Quadruple q;
    for (int i = 0; i < 4; ++i) q[i] = int_string(v[i], path + "[" + std::to_string(i) + "]");
    return q;
}

void five_tuple(const json& v, const std::string& path, Quadruple& q, std::uint64_t& last) {
    if (!v.is_array() || v.size() != 5) fail(path, "expected an array of 5 decimal strings");
    for (int i = 0; i < 4; ++i) q[i] = int_string(v[i], path + "[" + std::to_string(i) + "]");
    last = u64_string(v[4], path + "[4]");
}

OrderKey key_value(const json& v, const std::string& path) {
    check_object(v, {"L", "nu"}, path);
    OrderKey k;
    k.L = uint_number(field(v, "L", path), path + ".L");
    k.nu = uint_number(field(v, "nu", path), path + ".nu");
    return k;
}

DescentRecord record_value(const json& v, const std::string& path, std::uint32_t index) {
    check_object(v,
                 {"a", "p_prime", "perm", "b", "c", "d", "a_next", "key_before", "key_after",
                  "residual_gcd_applied"},
                 path);
    DescentRecord r;
    r.step_index = index;
    five_tuple(field(v, "a", path), path + ".a", r.a, r.a5);
    r.p_prime = u64_string(field(v, "p_prime", path), path + ".p_prime");
    const json& perm = field(v, "perm", path);
    if (!perm.is_array() || perm.size() != 4) fail(path + ".perm", "expected an array of 4 indices");
    for (int i = 0; i < 4; ++i) {
        std::uint64_t ix = uint_number(perm[i], path + ".perm[" + std::to_string(i) + "]");
        if (ix > 3) fail(path + ".perm[" + std::to_string(i) + "]", "index out of range 0-3");
        r.perm[i] = std::uint8_t(ix);
    }
    five_tuple(field(v, "b", path), path + ".b", r.b, r.b5);
    r.c = quad(field(v, "c", path), path + ".c");
    r.d = u128_string(field(v, "d", path), path + ".d");
    five_tuple(field(v, "a_next", path), path + ".a_next", r.a_next, r.a5_next);
    r.key_before = key_value(field(v, "key_before", path), path + ".key_before");
    r.key_after = key_value(field(v, "key_after", path), path + ".key_after");
    r.residual_gcd_applied =
        bool_value(field(v, "residual_gcd_applied", path), path + ".residual_gcd_applied");
    return r;
}

Certificate cert_value(const json& j, const std::string& path) {
    check_object(j, {"version", "p", "seed", "initial", "steps", "result"}, path);
    std::uint64_t version = uint_number(field(j, "version", path), path + ".version");
    if (version != 1) fail(path + ".version", "unsupported version " + std::to_string(version));

    Certificate cert;
    cert.p = u64_string(field(j, "p", path), path + ".p");
    cert.seed = u64_string(field(j, "seed", path), path + ".seed");

    const json& initial = field(j, "initial", path);
    check_object(initial, {"a", "a5"}, path + ".initial");
    cert.initial_a = quad(field(initial, "a", path + ".initial"), path + ".initial.a");
    cert.initial_a5 = u64_string(field(initial, "a5", path + ".initial"), path + ".initial.a5");

    const json& steps = field(j, "steps", path);
    if (!steps.is_array()) fail(path + ".steps", "expected an array");
    std::uint32_t index = 1;
    for (const auto& s : steps) {
        cert.steps.push_back(
            record_value(s, path + ".steps[" + std::to_string(index - 1) + "]", index));
        ++index;
    }
    cert.result = quad(field(j, "result", path), path + ".result");
    return cert;
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw CertificateParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

std::string serialize(const Certificate& cert) {
    return cert_json(cert).dump(2) + "\n";
}

std::string serialize(const std::vector<Certificate>& certs) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : certs) arr.push_back(cert_json(c));
    return arr.dump(2) + "\n";
}

Certificate deserialize(std::string_view text) {
    json j = parse_document(text);
    if (!j.is_object()) throw CertificateParseError("certificate: expected a JSON object");
    return cert_value(j, "certificate");
}

std::vector<Certificate> deserialize_any(std::string_view text) {
    json j = parse_document(text);
    std::vector<Certificate> out;
    if (j.is_object()) {
        out.push_back(cert_value(j, "certificate"));
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(cert_value(j[i], "certificate[" + std::to_string(i) + "]"));
    } else {
        throw CertificateParseError("certificate: expected a JSON object or array");
    }
    return out;
}

std::string VerificationReport::summary() const {
    if (valid()) return "VALID";
    std::ostringstream os;
    os << "INVALID";
    for (const auto& f : failures) {
        os << "\n";
        if (f.step >= 0)
            os << "step " << f.step << ": ";
        os << f.check << ": " << f.detail;
    }
    return os.str();
}

namespace {

Quadruple apply_perm(const Quadruple& q, const std::array<std::uint8_t, 4>& perm) {
    Quadruple r;
    for (int i = 0; i < 4; ++i) r[i] = q[perm[i]];
    return r;
}

bool is_permutation(const std::array<std::uint8_t, 4>& perm) {
    bool seen[4] = {false, false, false, false};
    for (auto ix : perm) {
        if (ix > 3 || seen[ix]) return false;
        seen[ix] = true;
    }
    return true;
}

// The canonical p' = 2 pairing the generator commits to: position 0, its
// parity partner, then the rest ascending.
std::array<std::uint8_t, 4> canonical_parity_perm(const Quadruple& a) {
    auto odd = [](Int128 v) { return (v & 1) != 0; };
    int partner = -1;
    for (int j = 1; j < 4; ++j) {
        if (odd(a[j]) == odd(a[0])) {
            partner = j;
            break;
        }
    }
    std::array<std::uint8_t, 4> perm{0, 1, 2, 3};
    if (partner < 0) return perm; // impossible for even norm; caught elsewhere
    perm[1] = std::uint8_t(partner);
    int k = 2;
    for (int j = 1; j < 4; ++j)
        if (j != partner) perm[k++] = std::uint8_t(j);
    return perm;
}

UInt128 gcd5(const Quadruple& q, std::uint64_t last) {
    return gcd_u128(gcd_many({q[0], q[1], q[2], q[3]}), last);
}

struct Checker {
    VerificationReport report;

    void add(int step, std::string check, std::string detail) {
        report.failures.push_back({step, std::move(check), std::move(detail)});
    }

    bool require(bool ok, int step, const char* check, const std::string& detail) {
        if (!ok) add(step, check, detail);
        return ok;
    }
};

// Every prime factor strictly below bound; factors computed independently.
bool factors_precede(std::uint64_t n, std::uint64_t bound) {
    if (n <= 1) return true;
    for (const auto& f : factor_list(n))
        if (f.prime >= bound) return false;
    return true;
}

U256 wide(UInt128 v) {
    return U256{0, v};
}

} // namespace

VerificationReport verify(const Certificate& cert) {
    Checker ck;
    const std::uint64_t p = cert.p;

    bool p_ok = ck.require(p >= 2 && p <= kMaxInput, -1, "p_range",
                           "p = " + std::to_string(p) + " outside [2, 2^62]");
    if (p_ok) p_ok = ck.require(is_prime(p), -1, "p_is_prime", std::to_string(p) + " is not prime");

    ck.require(cert.initial_a5 >= 1 && (!p_ok || cert.initial_a5 < p), -1, "initial_a5_range",
               "a5 = " + std::to_string(cert.initial_a5));
    if (p_ok) {
        ck.require(norm256(cert.initial_a) == wide(UInt128(p) * cert.initial_a5), -1,
                   "initial_norm", "norm(a) != p * a5");
        ck.require(gcd5(cert.initial_a, cert.initial_a5) == 1, -1, "initial_gcd",
                   "5-tuple has a common factor");
        ck.require(factors_precede(cert.initial_a5, p), -1, "initial_a5_precedes",
                   "a5 has a prime factor >= p");
    }

    Quadruple cur = cert.initial_a;
    std::uint64_t cur5 = cert.initial_a5;

    for (const auto& rec : cert.steps) {
        const int k = int(rec.step_index);

        ck.require(rec.a == cur && rec.a5 == cur5, k, "chain_link",
                   "step input differs from the previous output");
        cur = rec.a_next;
        cur5 = rec.a5_next;

        if (!ck.require(rec.a5 > 1, k, "a5_above_one", "a5 = " + std::to_string(rec.a5)))
            continue;
        if (!ck.require(is_prime(rec.p_prime), k, "p_prime_is_prime",
                        std::to_string(rec.p_prime) + " is not prime"))
            continue;
        if (!ck.require(rec.a5 % rec.p_prime == 0, k, "p_prime_divides",
                        "p' does not divide a5"))
            continue;

        auto a5_factors = factor_list(rec.a5);
        ck.require(a5_factors.back().prime == rec.p_prime, k, "p_prime_leading",
                   "p' = " + std::to_string(rec.p_prime) + " is not the leading prime of " +
                       std::to_string(rec.a5));
        ck.require(factors_precede(rec.a5, p), k, "a5_precedes", "a5 has a prime factor >= p");

        if (!ck.require(is_permutation(rec.perm), k, "perm_valid", "not a permutation of 0-3"))
            continue;
        const std::array<std::uint8_t, 4> expected_perm =
            rec.p_prime == 2 ? canonical_parity_perm(rec.a) : std::array<std::uint8_t, 4>{0, 1, 2, 3};
        ck.require(rec.perm == expected_perm, k, "perm_canonical",
                   "permutation differs from the canonical choice");

        // Companion is itself a reduced solution for p'.
        ck.require(norm256(rec.b) == wide(UInt128(rec.p_prime) * rec.b5), k, "companion_norm",
                   "norm(b) != p' * b5");
        ck.require(gcd5(rec.b, rec.b5) == 1, k, "companion_gcd", "b 5-tuple has a common factor");
        ck.require(rec.b5 >= 1 && rec.b5 < rec.p_prime, k, "companion_b5_range",
                   "b5 = " + std::to_string(rec.b5));
        if (rec.p_prime == 2)
            ck.require(rec.b == Quadruple{{1, 1, 0, 0}} && rec.b5 == 1, k, "companion_form",
                       "p' = 2 companion must be (1,1,0,0; 1)");

        const Quadruple wa = apply_perm(rec.a, rec.perm);
        Quadruple expect_c;
        bool compose_ok = true;
        try {
            expect_c = compose(wa, rec.b);
        } catch (const OverflowError&) {
            compose_ok = false;
        }
        ck.require(compose_ok && rec.c == expect_c, k, "compose_consistency",
                   "c != compose(perm(a), b)");

        bool cong_ok = true;
        for (int i = 0; i < 4; ++i)
            if (least_absolute_residue(rec.c[i], rec.p_prime) != 0) cong_ok = false;
        ck.require(cong_ok, k, "companion_congruences", "a composed component is not divisible by p'");

        ck.require(norm256(rec.c) ==
                       mul_full_u128(UInt128(p) * rec.a5, UInt128(rec.p_prime) * rec.b5),
                   k, "composition_norm", "norm(c) != p * p' * a5 * b5");

        UInt128 d = gcd_many({rec.c[0], rec.c[1], rec.c[2], rec.c[3]});
        if (!ck.require(rec.d == d && d >= 1, k, "d_gcd",
                        "stored d != gcd(c) = " + to_string(d)))
            continue;
        ck.require(d % rec.p_prime == 0, k, "d_multiple_of_p_prime", "p' does not divide d");
        ck.require(d % p != 0, k, "d_coprime_to_p", "p divides d");

        std::optional<UInt128> quotient;
        try {
            quotient = divide_product_by_square(d, rec.p_prime, rec.a5, rec.b5);
        } catch (const OverflowError&) {
            quotient = std::nullopt;
        }
        if (!ck.require(quotient.has_value(), k, "d_square_divides",
                        "d^2 does not divide p' * a5 * b5"))
            continue;

        Quadruple t;
        for (int i = 0; i < 4; ++i) t[i] = rec.c[i] / Int128(d);
        UInt128 h = gcd_many({t[0], t[1], t[2], t[3]});
        ck.require(rec.residual_gcd_applied == (h > 1), k, "residual_flag",
                   "residual_gcd_applied inconsistent with gcd " + to_string(h));
        bool next_ok = h >= 1;
        try {
            if (next_ok) {
                UInt128 h2 = checked_mul_u(h, h);
                next_ok = *quotient % h2 == 0;
            }
            if (next_ok) {
                UInt128 a5n = *quotient / (h * h);
                Quadruple expect_next;
                for (int i = 0; i < 4; ++i) expect_next[i] = t[i] / Int128(h);
                next_ok = rec.a_next == expect_next && UInt128(rec.a5_next) == a5n;
            }
        } catch (const OverflowError&) {
            next_ok = false;
        }
        ck.require(next_ok, k, "a_next_consistency",
                   "a_next != (c/d)/h with a5 = p' * a5 * b5 / (d^2 h^2)");

        ck.require(rec.a5_next >= 1 && rec.a5_next < p, k, "a5_next_range",
                   "a5^1 = " + std::to_string(rec.a5_next));
        ck.require(norm256(rec.a_next) == wide(UInt128(p) * rec.a5_next), k, "successor_norm",
                   "norm(a^1) != p * a5^1");
        ck.require(gcd5(rec.a_next, rec.a5_next) == 1, k, "successor_gcd",
                   "successor 5-tuple has a common factor");
        ck.require(factors_precede(rec.a5_next, p), k, "a5_next_precedes",
                   "a5^1 has a prime factor >= p");

        bool keys_ok = true;
        try {
            keys_ok = rec.key_before == order_key_of(rec.a5);
        } catch (const std::exception&) {
            keys_ok = false;
        }
        ck.require(keys_ok, k, "key_before", "key_before != key(a5)");
        try {
            keys_ok = rec.key_after == order_key_of(rec.a5_next);
        } catch (const std::exception&) {
            keys_ok = false;
        }
        ck.require(keys_ok, k, "key_after", "key_after != key(a5^1)");
        ck.require(rec.key_after < rec.key_before, k, "key_decrease",
                   "order key did not strictly decrease");
    }

    ck.require(cur5 == 1, -1, "final_a5", "chain ends with a5 = " + std::to_string(cur5));
    ck.require(cert.result == cur, -1, "result_match", "result differs from the final quadruple");
    if (p_ok)
        ck.require(norm256(cert.result) == wide(UInt128(p)), -1, "result_norm",
                   "norm(result) != p");

    return ck.report;
}

} // namespace foursq
