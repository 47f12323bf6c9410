#include "krull/cone.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace krull::cone {

namespace {

constexpr std::size_t kRowBlowupCap = 200000;

bool coeffs_all_zero(const RationalVector& a) {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

/// Scales by a positive rational so every coefficient and the constant are
/// integers with overall content 1. The constraint set is unchanged.
void normalize_row(LinearRow& r) {
    Int l = 1;
    for (const auto& c : r.a) l = lcm(l, Int(c.get_den()));
    l = lcm(l, Int(r.b.get_den()));
    if (l != 1) {
        Rat f(l);
        for (auto& c : r.a) c *= f;
        r.b *= f;
    }
    Int g = 0;
    for (const auto& c : r.a) g = gcd(g, Int(c.get_num()));
    g = gcd(g, Int(r.b.get_num()));
    if (g > 1) {
        Rat f = make_rat(Int(1), g);
        for (auto& c : r.a) c *= f;
        r.b *= f;
    }
}

/// Drops trivially true rows, detects trivially false ones, and keeps only
/// the tightest constant per coefficient direction (pairwise-implied
/// inequality removal). Returns false when a constant row is violated.
bool prune_rows(std::vector<LinearRow>& rows) {
    std::map<RationalVector, Rat> tightest;
    for (auto& r : rows) {
        normalize_row(r);
        if (coeffs_all_zero(r.a)) {
            if (r.b < 0) return false;
            continue;
        }
        auto it = tightest.find(r.a);
        if (it == tightest.end())
            tightest.emplace(r.a, r.b);
        else if (r.b < it->second)
            it->second = r.b;
    }
    rows.clear();
    rows.reserve(tightest.size());
    for (auto& [a, b] : tightest) rows.push_back(LinearRow{a, b});
    return true;
}

/// Row plus the set of original inequalities it descends from. By the
/// Chernikov/Imbert ancestor rule, a row derived from more than
/// (eliminated variables + 1) originals is redundant and can be dropped
/// without changing the projection.
struct TrackedRow {
    LinearRow row;
    std::uint64_t ancestors = 0;
};

/// As prune_rows, over ancestor-tracked rows.
bool prune_tracked_rows(std::vector<TrackedRow>& rows) {
    std::map<RationalVector, TrackedRow> tightest;
    for (auto& r : rows) {
        normalize_row(r.row);
        if (coeffs_all_zero(r.row.a)) {
            if (r.row.b < 0) return false;
            continue;
        }
        auto it = tightest.find(r.row.a);
        if (it == tightest.end()) {
            auto key = r.row.a;
            tightest.emplace(std::move(key), std::move(r));
        } else if (r.row.b < it->second.row.b) {
            it->second = std::move(r);
        }
    }
    rows.clear();
    rows.reserve(tightest.size());
    for (auto& [a, r] : tightest) rows.push_back(std::move(r));
    return true;
}

struct Substitution {
    std::size_t var;
    RationalVector coef; // x_var = cst + sum_j coef[j] x_j, coef[var] == 0
    Rat cst;
};

void apply_substitution(LinearRow& row, const Substitution& s) {
    Rat c = row.a[s.var];
    if (c == 0) return;
    row.a[s.var] = 0;
    row.b += c * s.cst;
    for (std::size_t j = 0; j < row.a.size(); ++j) row.a[j] += c * s.coef[j];
}

struct EliminationLevel {
    std::size_t var;
    std::vector<LinearRow> lower; // a[var] > 0: x_var >= bound
    std::vector<LinearRow> upper; // a[var] < 0: x_var <= bound
};

Rat bound_from_row(const LinearRow& r, std::size_t v, const RationalVector& x) {
    Rat rest = r.b;
    for (std::size_t j = 0; j < r.a.size(); ++j)
        if (j != v && r.a[j] != 0) rest += r.a[j] * x[j];
    return -rest / r.a[v];
}

} // namespace

FeasibilityResult solve_linear_system(std::size_t nvars, std::vector<LinearRow> eqs,
                                      std::vector<LinearRow> ineqs) {
    for (const auto& r : eqs)
        if (r.a.size() != nvars) throw spec_error("equality row has wrong arity");
    for (const auto& r : ineqs)
        if (r.a.size() != nvars) throw spec_error("inequality row has wrong arity");

    std::vector<Substitution> substs;

    // Gaussian elimination of the equalities.
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        LinearRow row = eqs[i];
        for (const auto& s : substs) apply_substitution(row, s);
        std::size_t pivot = nvars;
        for (std::size_t j = 0; j < nvars; ++j)
            if (row.a[j] != 0) { pivot = j; break; }
        if (pivot == nvars) {
            if (row.b != 0) return {false, {}};
            continue;
        }
        Substitution s;
        s.var = pivot;
        s.coef.assign(nvars, Rat(0));
        Rat inv = Rat(-1) / row.a[pivot];
        for (std::size_t j = 0; j < nvars; ++j)
            if (j != pivot) s.coef[j] = row.a[j] * inv;
        s.cst = row.b * inv;
        substs.push_back(std::move(s));
    }
    for (auto& r : ineqs)
        for (const auto& s : substs) apply_substitution(r, s);

    if (!prune_rows(ineqs)) return {false, {}};
    if (ineqs.size() > 64)
        throw bound_error("too many inequality rows for ancestor tracking");

    std::vector<TrackedRow> rows;
    for (std::size_t i = 0; i < ineqs.size(); ++i)
        rows.push_back(TrackedRow{std::move(ineqs[i]), 1ull << i});

    // Fourier-Motzkin elimination of the remaining variables.
    std::vector<EliminationLevel> levels;
    std::size_t eliminated = 0;
    while (true) {
        // pick the variable minimizing the pos*neg product
        std::size_t best = nvars;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < nvars; ++v) {
            std::size_t pos = 0, neg = 0;
            for (const auto& r : rows) {
                if (r.row.a[v] > 0) ++pos;
                else if (r.row.a[v] < 0) ++neg;
            }
            if (pos + neg == 0) continue;
            std::size_t cost = pos * neg;
            if (best == nvars || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        if (best == nvars) break;
        ++eliminated;

        EliminationLevel level;
        level.var = best;
        std::vector<TrackedRow> pos, neg, rest;
        for (auto& r : rows) {
            if (r.row.a[best] > 0) {
                level.lower.push_back(r.row);
                pos.push_back(std::move(r));
            } else if (r.row.a[best] < 0) {
                level.upper.push_back(r.row);
                neg.push_back(std::move(r));
            } else {
                rest.push_back(std::move(r));
            }
        }
        for (const auto& lo : pos)
            for (const auto& hi : neg) {
                std::uint64_t ancestors = lo.ancestors | hi.ancestors;
                if (std::popcount(ancestors) >
                    static_cast<int>(eliminated) + 1)
                    continue; // Chernikov/Imbert: provably redundant
                LinearRow combo;
                combo.a.assign(nvars, Rat(0));
                Rat wl = -hi.row.a[best]; // > 0
                Rat wh = lo.row.a[best];  // > 0
                for (std::size_t j = 0; j < nvars; ++j)
                    combo.a[j] = lo.row.a[j] * wl + hi.row.a[j] * wh;
                combo.b = lo.row.b * wl + hi.row.b * wh;
                rest.push_back(TrackedRow{std::move(combo), ancestors});
                if (rest.size() > kRowBlowupCap)
                    throw bound_error("Fourier-Motzkin intermediate system too large");
            }
        if (!prune_tracked_rows(rest)) return {false, {}};
        rows = std::move(rest);
        levels.push_back(std::move(level));
    }
    for (const auto& r : rows)
        if (r.row.b < 0) return {false, {}};

    // Back-substitute a witness point.
    RationalVector x(nvars, Rat(0));
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        std::optional<Rat> lo, hi;
        for (const auto& r : it->lower) {
            Rat b = bound_from_row(r, it->var, x);
            if (!lo || b > *lo) lo = b;
        }
        for (const auto& r : it->upper) {
            Rat b = bound_from_row(r, it->var, x);
            if (!hi || b < *hi) hi = b;
        }
        Rat v(0);
        if (lo && hi) v = (*lo + *hi) / 2;
        else if (lo) v = *lo;
        else if (hi) v = *hi < 0 ? *hi : Rat(0);
        x[it->var] = v;
    }
    for (auto it = substs.rbegin(); it != substs.rend(); ++it) {
        Rat v = it->cst;
        for (std::size_t j = 0; j < nvars; ++j)
            if (it->coef[j] != 0) v += it->coef[j] * x[j];
        x[it->var] = v;
    }
    return {true, std::move(x)};
}

namespace {

void check_generators(const std::vector<IntVector>& generators) {
    if (generators.empty()) throw spec_error("cone needs at least one generator");
    if (generators.size() > kMaxGenerators)
        throw spec_error("too many cone generators (limit " +
                         std::to_string(kMaxGenerators) + ")");
    std::size_t d = generators.front().size();
    if (d == 0 || d > kMaxDimension)
        throw spec_error("cone dimension must be in [1, " +
                         std::to_string(kMaxDimension) + "]");
    for (const auto& g : generators) {
        if (g.size() != d) throw spec_error("generator dimension mismatch");
        bool nonzero = false;
        for (auto c : g) nonzero |= (c != 0);
        if (!nonzero) throw spec_error("cone generators must be nonzero");
    }
}

} // namespace

std::optional<RationalVector>
cone_membership(const std::vector<IntVector>& generators, const RationalVector& v) {
    check_generators(generators);
    std::size_t d = generators.front().size();
    if (v.size() != d) throw spec_error("dimension mismatch in cone membership");
    std::size_t k = generators.size();

    std::vector<LinearRow> eqs;
    for (std::size_t j = 0; j < d; ++j) {
        LinearRow row;
        row.a.assign(k, Rat(0));
        for (std::size_t i = 0; i < k; ++i) row.a[i] = Rat(generators[i][j]);
        row.b = -v[j];
        eqs.push_back(std::move(row));
    }
    std::vector<LinearRow> ineqs;
    for (std::size_t i = 0; i < k; ++i) {
        LinearRow row;
        row.a.assign(k, Rat(0));
        row.a[i] = 1;
        row.b = 0;
        ineqs.push_back(std::move(row));
    }
    auto res = solve_linear_system(k, std::move(eqs), std::move(ineqs));
    if (!res.feasible) return std::nullopt;
    return res.point;
}

bool is_pointed(const std::vector<IntVector>& generators) {
    check_generators(generators);
    std::size_t d = generators.front().size();
    std::size_t k = generators.size();

    // sum c_i g_i = 0, c >= 0, sum c_i = 1: solvable iff not pointed.
    std::vector<LinearRow> eqs;
    for (std::size_t j = 0; j < d; ++j) {
        LinearRow row;
        row.a.assign(k, Rat(0));
        for (std::size_t i = 0; i < k; ++i) row.a[i] = Rat(generators[i][j]);
        row.b = 0;
        eqs.push_back(std::move(row));
    }
    LinearRow sum_one;
    sum_one.a.assign(k, Rat(1));
    sum_one.b = -1;
    eqs.push_back(std::move(sum_one));

    std::vector<LinearRow> ineqs;
    for (std::size_t i = 0; i < k; ++i) {
        LinearRow row;
        row.a.assign(k, Rat(0));
        row.a[i] = 1;
        row.b = 0;
        ineqs.push_back(std::move(row));
    }
    return !solve_linear_system(k, std::move(eqs), std::move(ineqs)).feasible;
}

IntVector positive_grading(const std::vector<IntVector>& generators) {
    check_generators(generators);
    std::size_t d = generators.front().size();

    std::vector<LinearRow> ineqs;
    for (const auto& g : generators) {
        LinearRow row;
        row.a.assign(d, Rat(0));
        for (std::size_t j = 0; j < d; ++j) row.a[j] = Rat(g[j]);
        row.b = -1; // <g, y> >= 1
        ineqs.push_back(std::move(row));
    }
    auto res = solve_linear_system(d, {}, std::move(ineqs));
    if (!res.feasible)
        throw spec_error("cone is not pointed: no strictly positive grading exists");

    Int l = 1;
    for (const auto& c : res.point) l = lcm(l, Int(c.get_den()));
    IntVector lambda(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rat scaled = res.point[j] * Rat(l);
        lambda[j] = static_cast<std::int64_t>(scaled.get_num().get_si());
    }
    return lambda;
}

std::uint64_t content_of(const IntVector& v) {
    std::uint64_t g = 0;
    for (auto c : v) g = std::gcd(g, static_cast<std::uint64_t>(c < 0 ? -c : c));
    return g;
}

IntVector primitive_of(const IntVector& v) {
    std::uint64_t g = content_of(v);
    if (g == 0) throw spec_error("zero vector has no primitive");
    IntVector out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out[j] = v[j] / static_cast<std::int64_t>(g);
    return out;
}

std::vector<Ray> extreme_rays(const std::vector<IntVector>& generators) {
    check_generators(generators);
    if (!is_pointed(generators))
        throw spec_error("extreme rays require a pointed cone");

    std::map<IntVector, std::vector<std::pair<std::size_t, std::uint64_t>>> by_ray;
    for (std::size_t i = 0; i < generators.size(); ++i)
        by_ray[primitive_of(generators[i])].emplace_back(i, content_of(generators[i]));

    std::vector<Ray> rays;
    for (auto& [prim, members] : by_ray) {
        std::vector<IntVector> others;
        for (std::size_t i = 0; i < generators.size(); ++i) {
            bool on_ray = false;
            for (auto& [idx, mult] : members) on_ray |= (idx == i);
            if (!on_ray) others.push_back(generators[i]);
        }
        bool extreme;
        if (others.empty()) {
            extreme = true;
        } else {
            RationalVector v(prim.size());
            for (std::size_t j = 0; j < prim.size(); ++j) v[j] = Rat(prim[j]);
            extreme = !cone_membership(others, v).has_value();
        }
        if (extreme) {
            std::sort(members.begin(), members.end());
            rays.push_back(Ray{prim, std::move(members)});
        }
    }
    // std::map already iterates primitives in lexicographic order
    return rays;
}

std::size_t rank(const std::vector<IntVector>& generators) {
    if (generators.empty()) return 0;
    std::size_t d = generators.front().size();
    std::vector<RationalVector> m;
    for (const auto& g : generators) {
        RationalVector row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = Rat(g[j]);
        m.push_back(std::move(row));
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < d && r < m.size(); ++col) {
        std::size_t pivot = m.size();
        for (std::size_t i = r; i < m.size(); ++i)
            if (m[i][col] != 0) { pivot = i; break; }
        if (pivot == m.size()) continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[r][col];
            for (std::size_t j = col; j < d; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

std::vector<MonoidElement> strong_atoms_affine(const AffineMonoidSpec& spec) {
    if (!spec.pointed)
        throw spec_error("strong atoms require a pointed affine monoid");
    auto rays = extreme_rays(spec.generators);

    std::vector<MonoidElement> atoms;
    for (const auto& ray : rays) {
        std::uint64_t c = ray.members.front().second;
        for (const auto& [idx, mult] : ray.members) c = std::min(c, mult);
        bool divides_all = true;
        for (const auto& [idx, mult] : ray.members) divides_all &= (mult % c == 0);
        if (!divides_all) continue;
        IntVector atom(ray.primitive.size());
        for (std::size_t j = 0; j < atom.size(); ++j)
            atom[j] = ray.primitive[j] * static_cast<std::int64_t>(c);
        atoms.push_back(MonoidElement::int_vector(std::move(atom)));
    }
    if (atoms.size() > rays.size())
        throw error("strong-atom count exceeds extreme-ray count");
    if (rank(spec.generators) == spec.generators.size() &&
        rays.size() > static_cast<std::size_t>(spec.dimension))
        throw error("simplicial cone produced more rays than its dimension");
    return atoms;
}

} // namespace krull::cone
