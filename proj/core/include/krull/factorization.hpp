#ifndef KRULL_FACTORIZATION_HPP
#define KRULL_FACTORIZATION_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "krull/monoid.hpp"

namespace krull {

/// Outcome of a bounded search: either a concrete counterexample (reproducible
/// by re-checking it) or "no counterexample up to the bound". Never a global
/// claim.
template <typename Witness>
struct BoundedVerdict {
    std::uint64_t bound = 0;
    std::optional<Witness> witness;
    bool refuted() const { return witness.has_value(); }
};

/// Z(x): every way to write x as a multiset of atoms. `multisets` holds
/// non-decreasing index lists into `atoms`, so each multiset appears once.
struct FactorizationSet {
    MonoidElement element;
    std::vector<MonoidElement> atoms; // the atoms dividing the element
    std::vector<std::vector<std::size_t>> multisets;

    std::set<std::uint64_t> lengths() const {
        std::set<std::uint64_t> out;
        for (const auto& m : multisets) out.insert(m.size());
        return out;
    }
};

/// Atoms of the monoid with grading <= bound, canonically ordered.
std::vector<MonoidElement> atoms_up_to(const MonoidSpec& spec, std::uint64_t bound);

bool is_atom(const MonoidSpec& spec, const MonoidElement& a);

/// Complete Z(x). Every atom dividing x must have grading <= atom_bound or
/// the call fails with bound_error; the recursion enforces non-decreasing
/// atom indices so each multiset is generated exactly once.
FactorizationSet factorizations(const MonoidSpec& spec, const MonoidElement& x,
                                std::uint64_t atom_bound);

/// L(x) = {|z| : z in Z(x)}.
std::set<std::uint64_t> lengths(const MonoidSpec& spec, const MonoidElement& x,
                                std::uint64_t atom_bound);

struct PrimePair {
    MonoidElement b, c;
};

/// Searches b, c <= bound with p | bc, p does not divide b, p does not
/// divide c. `p` must be an atom.
BoundedVerdict<PrimePair> is_prime_bounded(const MonoidSpec& spec,
                                           const MonoidElement& p,
                                           std::uint64_t bound);

struct PowerWitness {
    std::uint64_t power; // a^power has more than one factorization
    FactorizationSet factorization_set;
};

struct StrongAtomVerdict {
    enum class Kind { ExactStrong, ExactNotStrong, Unrefuted, Refuted };
    Kind kind = Kind::Unrefuted;
    std::uint64_t power_bound = 0; // meaningful for the bounded kinds
    std::optional<PowerWitness> witness;

    bool exact() const {
        return kind == Kind::ExactStrong || kind == Kind::ExactNotStrong;
    }
    bool strong_or_unrefuted() const {
        return kind == Kind::ExactStrong || kind == Kind::Unrefuted;
    }
};

/// Exact for divisor-theory presentations (a = p^k(p) for a single divisor)
/// and for affine monoids (extreme-ray criterion); bounded |Z(a^n)| = 1
/// checks for n <= power_bound otherwise.
StrongAtomVerdict is_strong_atom(const MonoidSpec& spec, const MonoidElement& a,
                                 std::uint64_t power_bound, std::uint64_t atom_bound);

/// The generic bounded route, available for every family (used to cross-check
/// the exact criteria).
StrongAtomVerdict is_strong_atom_bounded(const MonoidSpec& spec, const MonoidElement& a,
                                         std::uint64_t power_bound,
                                         std::uint64_t atom_bound);

/// lcm of the class-group moduli when known (the decay exponent divides it),
/// else 6.
std::uint64_t default_power_bound(const MonoidSpec& spec);

struct UfmHfmReport {
    BoundedVerdict<MonoidElement> ufm; // refuted by any |Z(x)| > 1
    BoundedVerdict<MonoidElement> hfm; // refuted by any |L(x)| > 1
};

/// Scans every element with grading <= bound.
UfmHfmReport check_ufm_hfm_bounded(const MonoidSpec& spec, std::uint64_t bound);

} // namespace krull

#endif
