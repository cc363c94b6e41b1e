#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sy {

// Exact rational scalar. Thin alias over GMP's canonicalizing rational;
// everything in the kernel is exact, there is no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

// Renders "p/q" with the denominator always present ("3" -> "3/1"),
// matching the report grammar.
inline std::string rat_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Human form: omits "/1".
inline std::string rat_pretty(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace sy
