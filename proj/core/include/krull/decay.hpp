#ifndef KRULL_DECAY_HPP
#define KRULL_DECAY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krull/monoid.hpp"
#include "krull/rational.hpp"

namespace krull {

/// Strong atom of a divisor-theory presentation: p^k(p) with k(p) the order
/// of the divisor's class. Integer families carry the numeric value p^k and
/// label it decimally ("9"); abstract presentations label it "d3^2".
struct StrongAtom {
    std::int64_t divisor_id = 0;
    std::int64_t k = 1;
    std::string label;
    std::optional<std::uint64_t> value;
    MonoidElement element; // exponent vector {p: k}

    bool operator==(const StrongAtom& o) const {
        return divisor_id == o.divisor_id && k == o.k;
    }
};

StrongAtom make_strong_atom(const KrullPresentation& pres, const PrimeDivisor& d);

/// One strong atom per presented divisor, in divisor-id order.
std::vector<StrongAtom> strong_atoms(const KrullPresentation& pres);

/// Strong atoms with value <= bound (integer families) or degree k <= bound.
std::vector<StrongAtom> strong_atoms_up_to(const KrullPresentation& pres,
                                           std::uint64_t bound);

/// x^m = prod a^{x(a)} over strong atoms, with m minimal. lambda_a(x) =
/// x(a)/m and delta = sum of the lambdas are exact rationals.
struct DecayDecomposition {
    MonoidElement element;
    std::uint64_t m = 1;
    std::vector<std::pair<StrongAtom, std::uint64_t>> exponents; // x(a) > 0 only
    Rat delta;

    Rat lambda_of(std::int64_t divisor_id) const {
        for (const auto& [atom, e] : exponents)
            if (atom.divisor_id == divisor_id)
                return make_rat(Int(e), Int(m));
        return Rat(0);
    }
};

/// The decay decomposition of a member x: m = lcm_p k(p)/gcd(k(p), e_p),
/// x(p^k(p)) = m e_p / k(p). The identity gets m = 1, no exponents, delta 0.
DecayDecomposition decay(const KrullPresentation& pres, const MonoidElement& x);

/// (nonzero lambda values by strong atom, delta). Strong atoms outside the
/// support have lambda 0 and are omitted.
std::pair<std::vector<std::pair<StrongAtom, Rat>>, Rat>
lambda_delta(const KrullPresentation& pres, const MonoidElement& x);

/// Checks x_{m1}(a)/m1 = x_{m2}(a)/m2 for every strong atom, where m1, m2
/// are both valid decay exponents for x (k(p) | m_i e_p). A false return is
/// a library defect.
bool verify_proportionality(const KrullPresentation& pres, const MonoidElement& x,
                            std::uint64_t m1, std::uint64_t m2);

struct SplitEntry {
    MonoidElement atom; // m(atom) = 2
    StrongAtom a1, a2;  // atom^2 = a1 * a2, a1 != a2
};

/// For presentations with class group Z/2: every atom pq built from two
/// distinct class-1 divisors together with its unique splitting pair.
std::vector<SplitEntry> split_report(const KrullPresentation& pres);

/// {"m": int, "exponents": [{"atom": label, "e": int}], "delta": "p/q"}
std::string decay_to_json(const DecayDecomposition& d);

} // namespace krull

#endif
