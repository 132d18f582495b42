#include "foursq/descent.hpp"

#include <optional>
#include <stdexcept>

#include "foursq/arith.hpp"
#include "foursq/order.hpp"

namespace foursq {

namespace {

Quadruple permute(const Quadruple& q, const std::array<std::uint8_t, 4>& perm) {
    Quadruple r;
    for (int i = 0; i < 4; ++i) r[i] = q[perm[i]];
    return r;
}

bool is_odd(Int128 v) {
    return (v & 1) != 0;
}

// Canonical pairing permutation for p' = 2: position 0 first, then its
// parity partner, then the remaining positions ascending. Well defined
// because an even norm forces an even number of odd coordinates.
std::array<std::uint8_t, 4> parity_pairing(const Quadruple& a) {
    int partner = -1;
    for (int j = 1; j < 4; ++j) {
        if (is_odd(a[j]) == is_odd(a[0])) {
            partner = j;
            break;
        }
    }
    if (partner < 0) throw std::logic_error("parity_pairing: odd number of odd coordinates");
    std::array<std::uint8_t, 4> perm{0, std::uint8_t(partner), 0, 0};
    int k = 2;
    for (int j = 1; j < 4; ++j)
        if (j != partner) perm[k++] = std::uint8_t(j);
    return perm;
}

UInt128 gcd4(const Quadruple& q) {
    return gcd_many({q[0], q[1], q[2], q[3]});
}

} // namespace

void validate(const ReducedSolution& sol) {
    if (!is_prime(sol.p)) throw std::logic_error("reduced solution: p is not prime");
    if (sol.a5 == 0 || sol.a5 >= sol.p)
        throw std::logic_error("reduced solution: a5 out of [1, p)");
    if (norm(sol.a) != UInt128(sol.p) * sol.a5)
        throw std::logic_error("reduced solution: norm != p * a5");
    UInt128 g = gcd_u128(gcd4(sol.a), sol.a5);
    if (g != 1) throw std::logic_error("reduced solution: common factor in the 5-tuple");
    if (sol.a5 > 1) {
        for (const auto& f : factor_list(sol.a5))
            if (f.prime >= sol.p)
                throw std::logic_error("reduced solution: a5 has a factor not preceding p");
    }
}

ReducedSolution initial_reduced_solution(std::uint64_t p, Rng& rng) {
    if (p > kMaxInput) throw RangeError("initial_reduced_solution: p exceeds 2^62");
    if (!is_prime(p)) throw std::invalid_argument("initial_reduced_solution: p is not prime");
    if (p == 2) return {2, {{1, 1, 0, 0}}, 1};

    Witness w = sqrt_minus_one_minus_square(p, rng);
    Quadruple a{{Int128(w.a), Int128(w.b), 1, 0}};
    for (int i = 0; i < 4; ++i) a[i] = least_absolute_residue(a[i], p);

    UInt128 g = gcd4(a);
    if (g > 1) {
        for (int i = 0; i < 4; ++i) a[i] /= Int128(g);
    }
    UInt128 n = norm(a);
    if (n == 0 || n % p != 0)
        throw std::logic_error("initial_reduced_solution: witness norm not divisible by p");
    UInt128 a5 = n / p;
    if (a5 >= p) throw std::logic_error("initial_reduced_solution: a5 not below p");

    ReducedSolution sol{p, a, std::uint64_t(a5)};
    validate(sol);
    return sol;
}

Companion choose_companion(const ReducedSolution& sol, std::uint64_t p_prime) {
    if (!is_prime(p_prime))
        throw std::invalid_argument("choose_companion: p' must be prime");
    if (sol.a5 % p_prime != 0)
        throw std::invalid_argument("choose_companion: p' must divide a5");

    if (p_prime == 2) {
        auto perm = parity_pairing(sol.a);
        return {ReducedSolution{2, {{1, 1, 0, 0}}, 1}, perm};
    }

    Quadruple b;
    for (int i = 0; i < 4; ++i) b[i] = least_absolute_residue(sol.a[i], p_prime);
    UInt128 nb = norm(b);
    if (nb == 0)
        throw std::logic_error("choose_companion: all residues vanished (gcd invariant broken)");
    if (nb % p_prime != 0)
        throw std::logic_error("choose_companion: residue norm not divisible by p'");
    UInt128 b5 = nb / p_prime;

    UInt128 g = gcd4(b);
    if (g > 1) {
        for (int i = 0; i < 4; ++i) b[i] /= Int128(g);
        UInt128 g2 = checked_mul_u(g, g);
        if (b5 % g2 != 0) throw std::logic_error("choose_companion: g^2 does not divide b5");
        b5 /= g2;
    }
    if (b5 == 0 || b5 >= p_prime)
        throw std::logic_error("choose_companion: b5 not in [1, p')");

    ReducedSolution out{p_prime, b, std::uint64_t(b5)};
    validate(out);
    return {out, {0, 1, 2, 3}};
}

StepResult descent_step(const ReducedSolution& sol) {
    if (sol.a5 < 2) throw std::invalid_argument("descent_step: a5 = 1, nothing to descend");

    auto factors = factor_list(sol.a5);
    const std::uint64_t pn = factors.back().prime;

    Companion comp = choose_companion(sol, pn);
    const Quadruple wa = permute(sol.a, comp.perm);
    const std::uint64_t b5 = comp.sol.a5;

    Quadruple c = compose(wa, comp.sol.a);
    for (int i = 0; i < 4; ++i) {
        if (least_absolute_residue(c[i], pn) != 0)
            throw std::logic_error("descent_step: composed component not divisible by p'");
    }
    if (!(norm256(c) == mul_full_u128(UInt128(sol.p) * sol.a5, UInt128(pn) * b5)))
        throw std::logic_error("descent_step: norm of composition != p * p' * a5 * b5");

    UInt128 d = gcd4(c);
    if (d == 0 || d % pn != 0) throw std::logic_error("descent_step: p' does not divide gcd(c)");
    if (d % sol.p == 0) throw std::logic_error("descent_step: p divides gcd(c)");
    auto quotient = divide_product_by_square(d, pn, sol.a5, b5);
    if (!quotient) throw std::logic_error("descent_step: d^2 does not divide p' * a5 * b5");

    Quadruple next_q;
    for (int i = 0; i < 4; ++i) next_q[i] = c[i] / Int128(d);
    UInt128 nn = norm(next_q);
    if (nn % sol.p != 0) throw std::logic_error("descent_step: reduced norm not divisible by p");
    UInt128 a5n = nn / sol.p;
    if (a5n != *quotient) throw std::logic_error("descent_step: a5 bookkeeping mismatch");

    bool residual = false;
    UInt128 h = gcd4(next_q);
    if (h > 1) {
        UInt128 h2 = checked_mul_u(h, h);
        if (a5n % h2 != 0) throw std::logic_error("descent_step: residual gcd^2 does not divide a5");
        for (int i = 0; i < 4; ++i) next_q[i] /= Int128(h);
        a5n /= h2;
        residual = true;
    }
    if (a5n == 0 || a5n >= sol.a5)
        throw std::logic_error("descent_step: a5 did not decrease");

    ReducedSolution next{sol.p, next_q, std::uint64_t(a5n)};
    validate(next);

    DescentRecord rec;
    rec.a = sol.a;
    rec.a5 = sol.a5;
    rec.p_prime = pn;
    rec.perm = comp.perm;
    rec.b = comp.sol.a;
    rec.b5 = b5;
    rec.c = c;
    rec.d = d;
    rec.a_next = next.a;
    rec.a5_next = next.a5;
    rec.key_before = order_key_of(sol.a5);
    rec.key_after = order_key_of(next.a5);
    rec.residual_gcd_applied = residual;
    if (!(rec.key_after < rec.key_before))
        throw std::logic_error("descent_step: order key did not decrease");

    return {next, rec};
}

PrimeDecomposition decompose_prime(std::uint64_t p, std::uint64_t seed) {
    if (p > kMaxInput) throw RangeError("decompose_prime: p exceeds 2^62");
    if (!is_prime(p)) throw std::invalid_argument("decompose_prime: p is not prime");

    Rng rng(seed);
    ReducedSolution sol = initial_reduced_solution(p, rng);

    Certificate cert;
    cert.p = p;
    cert.seed = seed;
    cert.initial_a = sol.a;
    cert.initial_a5 = sol.a5;

    std::uint32_t step = 0;
    while (sol.a5 != 1) {
        if (++step > 200) throw std::logic_error("decompose_prime: descent chain too long (bug)");
        StepResult st = descent_step(sol);
        st.record.step_index = step;
        cert.steps.push_back(st.record);
        sol = st.next;
    }
    cert.result = sol.a;
    return {sol.a, cert};
}

} // namespace foursq
