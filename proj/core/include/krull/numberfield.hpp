#ifndef KRULL_NUMBERFIELD_HPP
#define KRULL_NUMBERFIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krull/decay.hpp"
#include "krull/monoid.hpp"
#include "krull/zeta.hpp"

namespace krull {

enum class SplitType { Split, Inert, Ramified };

/// Imaginary quadratic field Q(sqrt(d)), d squarefree and negative, with
/// configured class number h in {1, 2}. The configuration is probed against
/// norm-form representability of the split primes <= 200 at load time;
/// `validated` is set only for the shipped fields d in {-1, -2, -5, -6}.
struct QuadraticField {
    std::int64_t d = -1;
    std::int64_t D = -4; // d when d = 1 (mod 4), else 4d
    int class_number = 1;
    bool validated = false;
    std::uint64_t norm_bound = 10000;
    std::uint64_t factor_limit = 10'000'000;
};

QuadraticField make_field(std::int64_t d, int class_number,
                          std::uint64_t norm_bound = 10000);

/// {"family":"quadratic_field","d":-5,"class_number":2,"norm_bound":10000}
QuadraticField load_field_json(const std::string& json_text);
std::string field_to_json(const QuadraticField& field);

/// Full Kronecker symbol (a/n) for n >= 1.
int kronecker_symbol(std::int64_t a, std::int64_t n);

SplitType splitting(const QuadraticField& field, std::uint64_t p);

/// Prime ideal of O_K above the rational prime p. Split primes carry two
/// ideals told apart by conjugate_id: 0 pairs with the smaller square root
/// of d mod p, 1 with the other (labels "P5" and "P5'").
struct PrimeIdeal {
    std::uint64_t p = 0;
    SplitType type = SplitType::Ramified;
    std::uint64_t norm = 0; // p, or p^2 when inert
    bool principal = true;  // inert ideals always are (generated by p)
    int conjugate_id = 0;
    std::string label;
};

/// All prime ideals of norm <= X, sorted by (norm, p, conjugate_id); a split
/// prime contributes two entries.
std::vector<PrimeIdeal> prime_ideals_up_to_norm(const QuadraticField& field,
                                                std::uint64_t X);

/// Does the norm form (x^2 + |d| y^2, or its d = 1 (mod 4) variant)
/// represent n?
bool norm_form_represents(const QuadraticField& field, std::uint64_t n);

/// For h <= 2 and prime norms, representability of N(P) decides
/// principality; conjugate ideals agree (their classes are inverse, hence
/// equal when h <= 2).
bool is_principal(const QuadraticField& field, const PrimeIdeal& ideal);

/// Number of ideals of norm n via the Kronecker-character divisor sum
/// sum_{m | n} chi_D(m); the enumeration-independent cross-check.
std::uint64_t ideal_count_oracle(const QuadraticField& field, std::uint64_t n);

/// Oracle counts for every n <= X (index n; index 0 unused).
std::vector<std::uint64_t> ideal_counts_oracle_up_to(const QuadraticField& field,
                                                     std::uint64_t X);

/// Counts of norm-n multisets of enumerated prime ideals, for every n <= X.
/// Computed by per-ideal convolution, independent of the character oracle.
std::vector<std::uint64_t> ideal_counts_by_enumeration(const QuadraticField& field,
                                                       std::uint64_t X);

/// Partial sum sum_{n<=X} a_n / n^s (oracle counts) and the truncated Euler
/// product over prime ideals of norm <= X.
ZetaEstimate dedekind_zeta(const QuadraticField& field, double s, std::uint64_t X,
                           std::optional<double> tail_bound = std::nullopt);

/// Strong atom of the principal-ideal monoid: a principal prime ideal as-is
/// (k = 1) or the square of a non-principal one (k = 2, class number 2).
struct NFStrongAtom {
    PrimeIdeal ideal;
    int k = 1;
    std::uint64_t norm = 0; // N(P)^k
    std::string label;

    bool operator==(const NFStrongAtom& o) const {
        return ideal.p == o.ideal.p && ideal.conjugate_id == o.ideal.conjugate_id &&
               k == o.k;
    }
};

std::vector<NFStrongAtom> principal_monoid_strong_atoms(const QuadraticField& field,
                                                        std::uint64_t X);

/// Divisor id used for prime ideals inside presentations: 2p + conjugate_id.
std::int64_t ideal_divisor_id(const PrimeIdeal& ideal);

/// The principal-ideal monoid as a divisor-theory presentation over the
/// prime ideals of norm <= X, classes in Z/h (principal -> 0). The decay
/// machinery and this module must agree on strong atoms through it.
KrullPresentation presentation_from_splitting(const QuadraticField& field,
                                              std::uint64_t X);

/// The ideal-norm scale sigma_s on a presentation built by
/// presentation_from_splitting: base value N(P)^s on the strong atom over P
/// (the strong-atom closure then enumerates every ideal once, recovering the
/// Dedekind zeta series).
Scale norm_scale(const QuadraticField& field, const KrullPresentation& pres,
                 std::uint64_t s);

/// Decay decomposition of the principal ideal (x), x = u + v omega, through
/// the rational factorization of N(x) and the splitting data.
DecayDecomposition decay_in_OK(const QuadraticField& field, std::int64_t u,
                               std::int64_t v);

} // namespace krull

#endif
