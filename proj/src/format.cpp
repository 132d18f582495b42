#include "foursq/format.hpp"

#include <sstream>

namespace foursq {

std::string format_decomposition(std::uint64_t n, const Quadruple& q) {
    std::ostringstream os;
    os << n << " = ";
    for (int i = 0; i < 4; ++i) {
        if (i > 0) os << " + ";
        if (q[i] < 0)
            os << "(" << to_string(q[i]) << ")^2";
        else
            os << to_string(q[i]) << "^2";
    }
    return os.str();
}

std::string format_trace_line(const DescentRecord& rec) {
    std::ostringstream os;
    os << "step " << rec.step_index << ": p' = " << rec.p_prime << ", a5: " << rec.a5 << " -> "
       << rec.a5_next << ", key (" << rec.key_before.L << "," << rec.key_before.nu << ") -> ("
       << rec.key_after.L << "," << rec.key_after.nu << ")";
    return os.str();
}

std::string format_seed_line(std::uint64_t seed) {
    return "seed = " + std::to_string(seed);
}

} // namespace foursq
