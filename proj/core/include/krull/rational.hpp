#ifndef KRULL_RATIONAL_HPP
#define KRULL_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "krull/errors.hpp"

namespace krull {

/// Exact rational number. All invariant-sensitive arithmetic (decay rates,
/// cone feasibility, closed-form zeta sums) runs on this type; doubles are
/// only used for reporting and convergence estimates.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw spec_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw spec_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Always renders an explicit denominator: 1 -> "1/1", 2/3 -> "2/3".
inline std::string rat_frac_str(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q", "p", or a plain decimal literal like "1.9" (exactly 19/10).
Rat parse_rat(const std::string& text);

inline double to_double(const Rat& q) { return q.get_d(); }

Rat rat_pow(const Rat& base, std::uint64_t e);
Int int_pow(const Int& base, std::uint64_t e);

} // namespace krull

#endif
