#pragma once

#include <cstdint>
#include <string>

#include "foursq/certificate.hpp"
#include "foursq/euler.hpp"

namespace foursq {

// "23 = (-3)^2 + 2^2 + 1^2 + 3^2"
std::string format_decomposition(std::uint64_t n, const Quadruple& q);

// "step 1: p' = 3, a5: 3 -> 1, key (2,1) -> (0,0)"
std::string format_trace_line(const DescentRecord& rec);

std::string format_seed_line(std::uint64_t seed);

} // namespace foursq
