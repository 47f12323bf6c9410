#ifndef KRULL_PRESETS_HPP
#define KRULL_PRESETS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "krull/monoid.hpp"

namespace krull {

/// H = 4N0 + 1 presented inside the odd naturals: divisors are the odd
/// primes <= bound, class 0 for p = 1 (mod 4) and class 1 otherwise.
KrullPresentation hilbert_preset(std::uint64_t bound);

/// N with trivial class group; divisors are the primes <= bound.
KrullPresentation naturals_preset(std::uint64_t bound);

/// Free commutative monoid on n divisors (trivial class group).
KrullPresentation free_preset(std::uint64_t n);

/// Arbitrary presentation: the monoid is the kernel of the class-sum map.
KrullPresentation divisor_theory_preset(
    std::vector<std::int64_t> moduli,
    std::vector<std::pair<std::int64_t, GroupElem>> assignments);

/// Parses the JSON monoid-spec schema:
///   {"family": "hilbert"|"naturals"|"free"|"divisor_theory"|"affine"|"numerical",
///    "bound": int, "moduli": [int], "divisors": [{"id":int,"class":[int]}],
///    "generators": [[int]], "d": int}
/// Unknown families (including "quadratic_field", which has its own loader)
/// are rejected with spec_error.
MonoidSpec load_spec_json(const std::string& json_text);

std::string spec_to_json(const MonoidSpec& spec);

std::string family_name(const MonoidSpec& spec);

} // namespace krull

#endif
