#ifndef KRULL_MONOID_HPP
#define KRULL_MONOID_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "krull/class_group.hpp"
#include "krull/errors.hpp"

namespace krull {

enum class ElementKind { Exponents, IntVector, Natural, NumericalValue };

/// Canonical element of one monoid family. Exactly one representation is
/// active, selected by `kind`:
///   Exponents      finite-support map divisor-id -> exponent (zeros absent)
///   IntVector      element of Z^d for an affine monoid
///   Natural        positive integer (multiplicative families)
///   NumericalValue nonnegative integer (additive numerical monoid)
struct MonoidElement {
    ElementKind kind = ElementKind::Natural;
    std::map<std::int64_t, std::uint64_t> exponents;
    std::vector<std::int64_t> coords;
    std::uint64_t value = 1;

    static MonoidElement natural(std::uint64_t n) {
        MonoidElement e;
        e.kind = ElementKind::Natural;
        e.value = n;
        return e;
    }
    static MonoidElement numerical(std::uint64_t n) {
        MonoidElement e;
        e.kind = ElementKind::NumericalValue;
        e.value = n;
        return e;
    }
    static MonoidElement int_vector(std::vector<std::int64_t> v) {
        MonoidElement e;
        e.kind = ElementKind::IntVector;
        e.coords = std::move(v);
        e.value = 0;
        return e;
    }
    static MonoidElement exponent_vector(std::map<std::int64_t, std::uint64_t> m) {
        MonoidElement e;
        e.kind = ElementKind::Exponents;
        e.value = 0;
        for (auto& [id, exp] : m)
            if (exp > 0) e.exponents.emplace(id, exp);
        return e;
    }

    bool is_identity() const {
        switch (kind) {
            case ElementKind::Exponents: return exponents.empty();
            case ElementKind::IntVector:
                for (auto c : coords)
                    if (c != 0) return false;
                return true;
            case ElementKind::Natural: return value == 1;
            case ElementKind::NumericalValue: return value == 0;
        }
        return false;
    }

    bool operator==(const MonoidElement&) const = default;
    /// Structural order (containers, dedup). Canonical monoid order is
    /// spec-dependent; see canonical_less.
    bool operator<(const MonoidElement& o) const;

    std::string str() const;
};

enum class PresetFamily { Hilbert, Naturals, Free, DivisorTheory };

struct PrimeDivisor {
    std::int64_t id = 0;
    std::string display;
    GroupElem cls;
    std::int64_t order = 1; // order of cls in the class group
};

/// Divisor-theory presentation: the monoid is the kernel of the class-sum
/// map on exponent vectors over `divisors`. A conceptually infinite divisor
/// set (all primes) is truncated at `bound`; results downstream are relative
/// to divisors <= bound.
struct KrullPresentation {
    PresetFamily family = PresetFamily::DivisorTheory;
    ClassGroup group;
    std::vector<PrimeDivisor> divisors; // sorted by id, ids unique
    std::optional<std::uint64_t> bound;
    std::uint64_t factor_limit = 10'000'000;

    bool integer_family() const {
        return family == PresetFamily::Hilbert || family == PresetFamily::Naturals;
    }
    const PrimeDivisor* find_divisor(std::int64_t id) const;
    const PrimeDivisor& divisor_checked(std::int64_t id) const;
};

/// Finitely generated submonoid of Z^d. `pointed` and the strictly positive
/// integer grading are computed once at construction (make_affine_spec);
/// the grading is only meaningful when the cone is pointed.
struct AffineMonoidSpec {
    int dimension = 0;
    std::vector<std::vector<std::int64_t>> generators;
    bool pointed = false;
    std::vector<std::int64_t> grading;
};

/// Numerical monoid <g_1, ..., g_k> inside the additive naturals.
struct NumericalMonoidSpec {
    std::vector<std::uint64_t> generators; // each >= 1
};

using MonoidSpec = std::variant<KrullPresentation, AffineMonoidSpec, NumericalMonoidSpec>;

/// Builds an affine spec, computing pointedness and (when pointed) a
/// strictly positive grading via the exact cone solver.
AffineMonoidSpec make_affine_spec(int dimension,
                                  std::vector<std::vector<std::int64_t>> generators);

NumericalMonoidSpec make_numerical_spec(std::vector<std::uint64_t> generators);

// ---- operations ------------------------------------------------------------

bool membership(const MonoidSpec& spec, const MonoidElement& x);
MonoidElement identity(const MonoidSpec& spec);
MonoidElement combine(const MonoidSpec& spec, const MonoidElement& x,
                      const MonoidElement& y);
/// True iff some z in the monoid satisfies y = x * z. Throws spec_error when
/// x or y is not a member.
bool divides(const MonoidSpec& spec, const MonoidElement& x, const MonoidElement& y);
/// The witness z with y = x * z (requires divides(spec, x, y)).
MonoidElement cofactor(const MonoidSpec& spec, const MonoidElement& x,
                       const MonoidElement& y);

/// Class of an exponent vector (or of a factored integer) in Cl(M).
GroupElem class_of(const KrullPresentation& pres, const MonoidElement& x);

/// Exponent-vector view of an element of a presentation. Integers are
/// factored with the presentation's trial-division limit; prime factors
/// outside the presented divisors are rejected.
std::map<std::int64_t, std::uint64_t> to_exponents(const KrullPresentation& pres,
                                                   const MonoidElement& x);

/// As to_exponents, but nullopt when the element is not supported on the
/// presented divisors (bounded scans skip such elements; every result is
/// relative to the presentation's divisor truncation). Factoring-limit
/// failures still throw.
std::optional<std::map<std::int64_t, std::uint64_t>>
to_exponents_opt(const KrullPresentation& pres, const MonoidElement& x);

/// Integer value of an exponent vector in an integer family (overflow-checked).
std::uint64_t exponents_to_value(const KrullPresentation& pres,
                                 const std::map<std::int64_t, std::uint64_t>& e);

/// Grading used for bounded enumeration: integer value for multiplicative
/// families, total degree for exponent vectors, the positive functional for
/// affine monoids, the value itself for numerical monoids.
std::int64_t grading_value(const MonoidSpec& spec, const MonoidElement& x);

/// Canonical order: grading value first, then lexicographic on the
/// underlying vector (smaller divisor id / earlier coordinate wins).
bool canonical_less(const MonoidSpec& spec, const MonoidElement& a,
                    const MonoidElement& b);

/// All monoid elements with grading <= bound, canonically ordered, each once.
std::vector<MonoidElement> enumerate_elements(const MonoidSpec& spec,
                                              std::uint64_t bound);

} // namespace krull

#endif
