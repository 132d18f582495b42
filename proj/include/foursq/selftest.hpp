#pragma once

#include <cstdint>
#include <ostream>

namespace foursq {

struct SelftestOptions {
    std::uint64_t max = 10000; // sweep bound for the prime / natural suites
    unsigned jobs = 1;
    std::uint64_t seed = 0;
};

// Property suites at the requested scale; one summary line per suite.
// Returns true when every check passed (vacuously true for max = 0).
bool run_selftest(const SelftestOptions& opt, std::ostream& out);

// Decomposes every prime in [lo, hi], writing one CSV row per prime:
// p,chain_length,max_a5,wall_time_ns. Returns true when all norms check out.
bool run_bench(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed, std::ostream& csv);

} // namespace foursq
