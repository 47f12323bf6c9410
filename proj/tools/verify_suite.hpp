#ifndef KRULL_TOOLS_VERIFY_SUITE_HPP
#define KRULL_TOOLS_VERIFY_SUITE_HPP

#include <cstdint>
#include <ostream>

#include "krull/monoid.hpp"

namespace krull::verify {

/// Random member of a presentation: random exponents, then the class is
/// zeroed with a correction found by BFS over the class group.
MonoidElement random_member(const KrullPresentation& pres, std::uint64_t& rng_state);

struct DecaySuiteResult {
    std::uint64_t pairs_checked = 0;
    std::uint64_t additivity_violations = 0;      // lambda or delta
    std::uint64_t reexpansion_violations = 0;     // x(a) k(p) != m e_p
    std::uint64_t exponent_divisibility_violations = 0; // m does not divide exp(Cl)
    std::uint64_t proportionality_violations = 0;
    std::uint64_t kronecker_violations = 0;       // lambda_a(b) on strong atoms

    std::uint64_t total() const {
        return additivity_violations + reexpansion_violations +
               exponent_divisibility_violations + proportionality_violations +
               kronecker_violations;
    }
};

/// Exact decay-law checks over the class groups Z/2, Z/3, Z/2 x Z/2, Z/6
/// with 8 divisors of seeded random classes.
DecaySuiteResult decay_property_suite(std::uint64_t pairs_per_group,
                                      std::uint64_t seed);

/// Full cross-module property suite; prints one line per check.
bool run_suite(std::ostream& out);

} // namespace krull::verify

#endif
