#ifndef KRULL_CONE_HPP
#define KRULL_CONE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "krull/monoid.hpp"
#include "krull/rational.hpp"

namespace krull::cone {

/// All arithmetic in this module is exact rational; there is no floating
/// point anywhere on these paths.
using RationalVector = std::vector<Rat>;
using IntVector = std::vector<std::int64_t>;

// Desk-scale limits; larger inputs are rejected rather than ground through.
inline constexpr std::size_t kMaxGenerators = 32;
inline constexpr std::size_t kMaxDimension = 6;

/// One linear constraint sum_j a[j] x_j + b (>= 0 or == 0 depending on use).
struct LinearRow {
    RationalVector a;
    Rat b;
};

struct FeasibilityResult {
    bool feasible = false;
    RationalVector point; // a witness when feasible
};

/// Decides { x : eq rows == 0, ineq rows >= 0 } != empty by Gaussian
/// elimination of the equalities followed by Fourier-Motzkin elimination
/// with redundancy pruning; returns an exact witness point when feasible.
FeasibilityResult solve_linear_system(std::size_t nvars,
                                      std::vector<LinearRow> eqs,
                                      std::vector<LinearRow> ineqs);

/// Nonnegative rational coefficients c with v = sum c_i g_i, or nullopt.
std::optional<RationalVector>
cone_membership(const std::vector<IntVector>& generators, const RationalVector& v);

/// True iff no nonzero w has both w and -w in the cone; decided by
/// infeasibility of sum c_i g_i = 0, c >= 0, sum c_i = 1.
bool is_pointed(const std::vector<IntVector>& generators);

/// Integer functional lambda with <lambda, g> >= 1 for every generator.
/// Exists iff the cone is pointed (Gordan duality); throws spec_error
/// otherwise.
IntVector positive_grading(const std::vector<IntVector>& generators);

/// One-dimensional face of the cone. `primitive` is the content-1 integer
/// vector spanning the ray, direction preserved (no sign normalization, so
/// the generator multiples stay positive). `members` lists (generator index,
/// positive multiple c) with generator = c * primitive.
struct Ray {
    IntVector primitive;
    std::vector<std::pair<std::size_t, std::uint64_t>> members;
};

/// Extreme rays of a pointed cone: g spans one iff g lies outside the cone
/// of the generators off its ray. Sorted by primitive vector, lexicographic.
std::vector<Ray> extreme_rays(const std::vector<IntVector>& generators);

/// Strong atoms of a pointed affine monoid: an extreme ray with generator
/// multiples {c_i} of its primitive u contributes the atom (min c_i) * u
/// exactly when min c_i divides every c_i (the ray's trace on the monoid is
/// then a copy of the naturals).
std::vector<MonoidElement> strong_atoms_affine(const AffineMonoidSpec& spec);

/// Rank of the generator matrix (exact).
std::size_t rank(const std::vector<IntVector>& generators);

IntVector primitive_of(const IntVector& v);
std::uint64_t content_of(const IntVector& v);

} // namespace krull::cone

#endif
