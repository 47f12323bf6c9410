#include "krull/monoid.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "krull/cone.hpp"
#include "krull/primes.hpp"

namespace krull {

bool MonoidElement::operator<(const MonoidElement& o) const {
    if (kind != o.kind) return kind < o.kind;
    switch (kind) {
        case ElementKind::Exponents: return exponents < o.exponents;
        case ElementKind::IntVector: return coords < o.coords;
        case ElementKind::Natural:
        case ElementKind::NumericalValue: return value < o.value;
    }
    return false;
}

std::string MonoidElement::str() const {
    switch (kind) {
        case ElementKind::Natural:
        case ElementKind::NumericalValue:
            return std::to_string(value);
        case ElementKind::IntVector: {
            std::string out = "(";
            for (std::size_t i = 0; i < coords.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(coords[i]);
            }
            return out + ")";
        }
        case ElementKind::Exponents: {
            if (exponents.empty()) return "1";
            std::string out;
            for (auto& [id, e] : exponents) {
                if (!out.empty()) out += ",";
                out += std::to_string(id) + ":" + std::to_string(e);
            }
            return out;
        }
    }
    return "?";
}

const PrimeDivisor* KrullPresentation::find_divisor(std::int64_t id) const {
    auto it = std::lower_bound(divisors.begin(), divisors.end(), id,
                               [](const PrimeDivisor& d, std::int64_t v) { return d.id < v; });
    if (it == divisors.end() || it->id != id) return nullptr;
    return &*it;
}

const PrimeDivisor& KrullPresentation::divisor_checked(std::int64_t id) const {
    const PrimeDivisor* d = find_divisor(id);
    if (!d) throw spec_error("unknown divisor id " + std::to_string(id));
    return *d;
}

AffineMonoidSpec make_affine_spec(int dimension,
                                  std::vector<std::vector<std::int64_t>> generators) {
    if (dimension < 1) throw spec_error("affine dimension must be >= 1");
    for (const auto& g : generators)
        if (g.size() != static_cast<std::size_t>(dimension))
            throw spec_error("generator dimension mismatch");
    AffineMonoidSpec spec;
    spec.dimension = dimension;
    spec.generators = std::move(generators);
    spec.pointed = cone::is_pointed(spec.generators);
    if (spec.pointed) spec.grading = cone::positive_grading(spec.generators);
    return spec;
}

NumericalMonoidSpec make_numerical_spec(std::vector<std::uint64_t> generators) {
    if (generators.empty()) throw spec_error("numerical monoid needs generators");
    for (auto g : generators)
        if (g < 1) throw spec_error("numerical generators must be >= 1");
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    return NumericalMonoidSpec{std::move(generators)};
}

namespace {

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool affine_member_rec(const AffineMonoidSpec& s, const std::vector<std::int64_t>& v,
                       const std::vector<std::int64_t>& gen_lams,
                       std::map<std::vector<std::int64_t>, bool>& memo) {
    bool zero = true;
    for (auto c : v) zero &= (c == 0);
    if (zero) return true;
    std::int64_t lam = dot(s.grading, v);
    if (lam <= 0) return false;
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    memo.emplace(v, false); // cycle guard; lambda strictly decreases anyway
    bool found = false;
    std::vector<std::int64_t> w(v.size());
    for (std::size_t i = 0; i < s.generators.size() && !found; ++i) {
        if (gen_lams[i] > lam) continue;
        for (std::size_t j = 0; j < v.size(); ++j) w[j] = v[j] - s.generators[i][j];
        found = affine_member_rec(s, w, gen_lams, memo);
    }
    memo[v] = found;
    return found;
}

bool affine_member(const AffineMonoidSpec& s, const std::vector<std::int64_t>& v) {
    if (!s.pointed)
        throw spec_error("affine membership requires a pointed cone "
                         "(the search would not terminate)");
    if (v.size() != static_cast<std::size_t>(s.dimension))
        throw spec_error("element dimension mismatch");
    std::vector<std::int64_t> gen_lams;
    for (const auto& g : s.generators) gen_lams.push_back(dot(s.grading, g));
    std::map<std::vector<std::int64_t>, bool> memo;
    return affine_member_rec(s, v, gen_lams, memo);
}

bool numerical_member(const NumericalMonoidSpec& s, std::uint64_t n) {
    if (n == 0) return true;
    std::vector<bool> reach(n + 1, false);
    reach[0] = true;
    for (std::uint64_t v = 1; v <= n; ++v)
        for (auto g : s.generators)
            if (g <= v && reach[v - g]) { reach[v] = true; break; }
    return reach[n];
}

void check_kind(const MonoidElement& x, ElementKind k, const char* what) {
    if (x.kind != k) throw spec_error(std::string("element kind does not match ") + what);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw bound_error("element value overflows 64 bits");
    return r;
}

} // namespace

bool membership(const MonoidSpec& spec, const MonoidElement& x) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (x.kind == ElementKind::Exponents) {
                    for (auto& [id, e] : x.exponents) s.divisor_checked(id);
                    return s.group.is_zero(class_of(s, x));
                }
                if (x.kind == ElementKind::Natural && s.integer_family()) {
                    if (x.value < 1) return false;
                    if (s.family == PresetFamily::Hilbert) return x.value % 4 == 1;
                    return true;
                }
                throw spec_error("element kind does not match the presentation family");
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                check_kind(x, ElementKind::IntVector, "the affine family");
                return affine_member(s, x.coords);
            } else {
                check_kind(x, ElementKind::NumericalValue, "the numerical family");
                return numerical_member(s, x.value);
            }
        },
        spec);
}

MonoidElement identity(const MonoidSpec& spec) {
    return std::visit(
        [&](const auto& s) -> MonoidElement {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (s.integer_family()) return MonoidElement::natural(1);
                return MonoidElement::exponent_vector({});
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                return MonoidElement::int_vector(std::vector<std::int64_t>(s.dimension, 0));
            } else {
                return MonoidElement::numerical(0);
            }
        },
        spec);
}

MonoidElement combine(const MonoidSpec& spec, const MonoidElement& x,
                      const MonoidElement& y) {
    if (x.kind != y.kind) throw spec_error("cannot combine elements of mixed families");
    return std::visit(
        [&](const auto& s) -> MonoidElement {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (x.kind == ElementKind::Natural)
                    return MonoidElement::natural(checked_mul(x.value, y.value));
                check_kind(x, ElementKind::Exponents, "the presentation family");
                auto merged = x.exponents;
                for (auto& [id, e] : y.exponents) merged[id] += e;
                return MonoidElement::exponent_vector(std::move(merged));
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                check_kind(x, ElementKind::IntVector, "the affine family");
                std::vector<std::int64_t> sum(x.coords.size());
                for (std::size_t i = 0; i < sum.size(); ++i)
                    sum[i] = x.coords[i] + y.coords[i];
                return MonoidElement::int_vector(std::move(sum));
            } else {
                check_kind(x, ElementKind::NumericalValue, "the numerical family");
                return MonoidElement::numerical(x.value + y.value);
            }
        },
        spec);
}

bool divides(const MonoidSpec& spec, const MonoidElement& x, const MonoidElement& y) {
    if (!membership(spec, x))
        throw spec_error("divides: " + x.str() + " is not a member");
    if (!membership(spec, y))
        throw spec_error("divides: " + y.str() + " is not a member");
    if (x.kind != y.kind) throw spec_error("divides: mixed element kinds");
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (x.kind == ElementKind::Natural) {
                    if (x.value == 0 || y.value % x.value != 0) return false;
                    return membership(spec, MonoidElement::natural(y.value / x.value));
                }
                std::map<std::int64_t, std::uint64_t> diff = y.exponents;
                for (auto& [id, e] : x.exponents) {
                    auto it = diff.find(id);
                    if (it == diff.end() || it->second < e) return false;
                    it->second -= e;
                }
                return s.group.is_zero(
                    class_of(s, MonoidElement::exponent_vector(std::move(diff))));
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                std::vector<std::int64_t> diff(x.coords.size());
                for (std::size_t i = 0; i < diff.size(); ++i)
                    diff[i] = y.coords[i] - x.coords[i];
                return affine_member(s, diff);
            } else {
                if (x.value > y.value) return false;
                return numerical_member(s, y.value - x.value);
            }
        },
        spec);
}

MonoidElement cofactor(const MonoidSpec& spec, const MonoidElement& x,
                       const MonoidElement& y) {
    if (!divides(spec, x, y))
        throw spec_error("cofactor: " + x.str() + " does not divide " + y.str());
    switch (x.kind) {
        case ElementKind::Natural:
            return MonoidElement::natural(y.value / x.value);
        case ElementKind::NumericalValue:
            return MonoidElement::numerical(y.value - x.value);
        case ElementKind::IntVector: {
            std::vector<std::int64_t> diff(x.coords.size());
            for (std::size_t i = 0; i < diff.size(); ++i)
                diff[i] = y.coords[i] - x.coords[i];
            return MonoidElement::int_vector(std::move(diff));
        }
        case ElementKind::Exponents: {
            auto diff = y.exponents;
            for (auto& [id, e] : x.exponents) diff[id] -= e;
            return MonoidElement::exponent_vector(std::move(diff));
        }
    }
    throw spec_error("cofactor: unknown element kind");
}

std::optional<std::map<std::int64_t, std::uint64_t>>
to_exponents_opt(const KrullPresentation& pres, const MonoidElement& x) {
    if (x.kind == ElementKind::Exponents) {
        for (auto& [id, e] : x.exponents)
            if (!pres.find_divisor(id)) return std::nullopt;
        return x.exponents;
    }
    if (x.kind != ElementKind::Natural || !pres.integer_family())
        throw spec_error("element kind does not match the presentation family");
    if (x.value == 0) throw spec_error("0 is not an element of a multiplicative family");
    std::map<std::int64_t, std::uint64_t> out;
    for (auto& [p, e] : factor_trial(x.value, pres.factor_limit)) {
        if (!pres.find_divisor(static_cast<std::int64_t>(p))) return std::nullopt;
        out[static_cast<std::int64_t>(p)] = e;
    }
    return out;
}

std::map<std::int64_t, std::uint64_t> to_exponents(const KrullPresentation& pres,
                                                   const MonoidElement& x) {
    auto exps = to_exponents_opt(pres, x);
    if (exps) return std::move(*exps);
    if (x.kind == ElementKind::Exponents)
        throw spec_error("unknown divisor id in " + x.str());
    if (pres.bound)
        throw bound_error(x.str() + " has a prime divisor beyond the presentation "
                                    "bound " +
                          std::to_string(*pres.bound));
    throw spec_error(x.str() + " is not supported on the presented divisors");
}

GroupElem class_of(const KrullPresentation& pres, const MonoidElement& x) {
    GroupElem acc = pres.group.zero();
    for (auto& [id, e] : to_exponents(pres, x)) {
        const PrimeDivisor& d = pres.divisor_checked(id);
        acc = pres.group.add(acc, pres.group.scale(d.cls, static_cast<std::int64_t>(
                                                              e % pres.group.exponent())));
    }
    return acc;
}

std::uint64_t exponents_to_value(const KrullPresentation& pres,
                                 const std::map<std::int64_t, std::uint64_t>& e) {
    if (!pres.integer_family())
        throw spec_error("exponent vectors have integer values only in integer families");
    std::uint64_t v = 1;
    for (auto& [id, exp] : e)
        for (std::uint64_t i = 0; i < exp; ++i)
            v = checked_mul(v, static_cast<std::uint64_t>(id));
    return v;
}

std::int64_t grading_value(const MonoidSpec& spec, const MonoidElement& x) {
    return std::visit(
        [&](const auto& s) -> std::int64_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (s.integer_family()) {
                    std::uint64_t v = x.kind == ElementKind::Natural
                                          ? x.value
                                          : exponents_to_value(s, x.exponents);
                    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
                        throw bound_error("element value too large for grading");
                    return static_cast<std::int64_t>(v);
                }
                std::int64_t deg = 0;
                for (auto& [id, e] : x.exponents) deg += static_cast<std::int64_t>(e);
                return deg;
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                if (!s.pointed) throw spec_error("grading requires a pointed cone");
                return dot(s.grading, x.coords);
            } else {
                return static_cast<std::int64_t>(x.value);
            }
        },
        spec);
}

bool canonical_less(const MonoidSpec& spec, const MonoidElement& a,
                    const MonoidElement& b) {
    std::int64_t ga = grading_value(spec, a), gb = grading_value(spec, b);
    if (ga != gb) return ga < gb;
    return a < b;
}

namespace {

void enumerate_exponent_vectors(const KrullPresentation& pres, std::uint64_t bound,
                                std::size_t i, std::uint64_t used,
                                std::map<std::int64_t, std::uint64_t>& cur,
                                std::vector<MonoidElement>& out) {
    if (i == pres.divisors.size()) {
        MonoidElement e = MonoidElement::exponent_vector(cur);
        if (pres.group.is_zero(class_of(pres, e))) out.push_back(std::move(e));
        return;
    }
    for (std::uint64_t exp = 0; used + exp <= bound; ++exp) {
        if (exp > 0) cur[pres.divisors[i].id] = exp;
        enumerate_exponent_vectors(pres, bound, i + 1, used + exp, cur, out);
    }
    cur.erase(pres.divisors[i].id);
}

} // namespace

std::vector<MonoidElement> enumerate_elements(const MonoidSpec& spec, std::uint64_t bound) {
    std::vector<MonoidElement> out = std::visit(
        [&](const auto& s) -> std::vector<MonoidElement> {
            using T = std::decay_t<decltype(s)>;
            std::vector<MonoidElement> elems;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (s.family == PresetFamily::Hilbert) {
                    for (std::uint64_t n = 1; n <= bound; n += 4)
                        elems.push_back(MonoidElement::natural(n));
                } else if (s.family == PresetFamily::Naturals) {
                    for (std::uint64_t n = 1; n <= bound; ++n)
                        elems.push_back(MonoidElement::natural(n));
                } else {
                    std::map<std::int64_t, std::uint64_t> cur;
                    enumerate_exponent_vectors(s, bound, 0, 0, cur, elems);
                }
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                if (!s.pointed)
                    throw spec_error("enumeration requires a pointed affine cone");
                std::set<std::vector<std::int64_t>> seen;
                std::vector<std::vector<std::int64_t>> frontier;
                std::vector<std::int64_t> zero(s.dimension, 0);
                seen.insert(zero);
                frontier.push_back(zero);
                while (!frontier.empty()) {
                    auto v = frontier.back();
                    frontier.pop_back();
                    for (const auto& g : s.generators) {
                        std::vector<std::int64_t> w(v.size());
                        for (std::size_t j = 0; j < w.size(); ++j) w[j] = v[j] + g[j];
                        if (dot(s.grading, w) > static_cast<std::int64_t>(bound)) continue;
                        if (seen.insert(w).second) frontier.push_back(w);
                    }
                }
                for (auto& v : seen) elems.push_back(MonoidElement::int_vector(v));
            } else {
                std::vector<bool> reach(bound + 1, false);
                reach[0] = true;
                for (std::uint64_t v = 1; v <= bound; ++v)
                    for (auto g : s.generators)
                        if (g <= v && reach[v - g]) { reach[v] = true; break; }
                for (std::uint64_t v = 0; v <= bound; ++v)
                    if (reach[v]) elems.push_back(MonoidElement::numerical(v));
            }
            return elems;
        },
        spec);
    std::sort(out.begin(), out.end(), [&](const MonoidElement& a, const MonoidElement& b) {
        return canonical_less(spec, a, b);
    });
    return out;
}

} // namespace krull
