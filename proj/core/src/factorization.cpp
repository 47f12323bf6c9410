#include "krull/factorization.hpp"

#include <algorithm>
#include <functional>

#include "krull/cone.hpp"

namespace krull {

namespace {

/// Proper nonzero sub-vector with class zero <=> reducible in a presentation.
bool presentation_is_atom(const KrullPresentation& pres,
                          const std::map<std::int64_t, std::uint64_t>& exps) {
    if (exps.empty()) return false;
    std::vector<std::pair<std::int64_t, std::uint64_t>> flat(exps.begin(), exps.end());
    std::vector<std::uint64_t> pick(flat.size(), 0);
    // iterate all sub-vectors in mixed radix (exponent + 1 per divisor)
    while (true) {
        std::size_t i = 0;
        while (i < pick.size() && pick[i] == flat[i].second) {
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size()) break;
        ++pick[i];
        bool proper_nonzero = false, full = true;
        for (std::size_t k = 0; k < pick.size(); ++k) {
            if (pick[k] > 0) proper_nonzero = true;
            if (pick[k] != flat[k].second) full = false;
        }
        if (!proper_nonzero || full) continue;
        GroupElem cls = pres.group.zero();
        for (std::size_t k = 0; k < pick.size(); ++k)
            cls = pres.group.add(
                cls, pres.group.scale(pres.divisor_checked(flat[k].first).cls,
                                      static_cast<std::int64_t>(
                                          pick[k] % pres.group.exponent())));
        if (pres.group.is_zero(cls)) return false;
    }
    return true;
}

} // namespace

bool is_atom(const MonoidSpec& spec, const MonoidElement& a) {
    if (!membership(spec, a)) throw spec_error(a.str() + " is not a member");
    if (a.is_identity()) return false;
    if (const auto* pres = std::get_if<KrullPresentation>(&spec))
        return presentation_is_atom(*pres, to_exponents(*pres, a));

    // additive families: scan candidate parts up to half the grading
    std::int64_t ga = grading_value(spec, a);
    auto elems = enumerate_elements(spec, static_cast<std::uint64_t>(ga));
    std::set<MonoidElement> members(elems.begin(), elems.end());
    for (const auto& b : elems) {
        if (b.is_identity()) continue;
        std::int64_t gb = grading_value(spec, b);
        if (2 * gb > ga) break; // canonical order is grading-ascending
        MonoidElement rest = a;
        bool ok = true;
        if (a.kind == ElementKind::IntVector) {
            for (std::size_t j = 0; j < rest.coords.size(); ++j)
                rest.coords[j] -= b.coords[j];
        } else {
            rest.value -= b.value;
        }
        ok = members.count(rest) > 0 && !rest.is_identity();
        if (ok) return false;
    }
    return true;
}

std::vector<MonoidElement> atoms_up_to(const MonoidSpec& spec, std::uint64_t bound) {
    auto elems = enumerate_elements(spec, bound);
    std::vector<MonoidElement> atoms;

    if (const auto* pres = std::get_if<KrullPresentation>(&spec)) {
        for (const auto& e : elems) {
            if (e.is_identity()) continue;
            // elements outside the divisor truncation are not in view
            auto exps = to_exponents_opt(*pres, e);
            if (!exps) continue;
            if (presentation_is_atom(*pres, *exps)) atoms.push_back(e);
        }
        return atoms;
    }

    std::set<MonoidElement> members(elems.begin(), elems.end());
    for (const auto& e : elems) {
        if (e.is_identity()) continue;
        bool reducible = false;
        std::int64_t ge = grading_value(spec, e);
        for (const auto& b : elems) {
            if (b.is_identity()) continue;
            if (2 * grading_value(spec, b) > ge) break;
            MonoidElement rest = e;
            if (e.kind == ElementKind::IntVector) {
                for (std::size_t j = 0; j < rest.coords.size(); ++j)
                    rest.coords[j] -= b.coords[j];
            } else {
                rest.value -= b.value;
            }
            if (!rest.is_identity() && members.count(rest)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) atoms.push_back(e);
    }
    return atoms;
}

namespace {

void factorization_dfs(const MonoidSpec& spec,
                       const std::vector<MonoidElement>& divisor_atoms,
                       const MonoidElement& rest, std::size_t min_index,
                       std::vector<std::size_t>& current,
                       std::vector<std::vector<std::size_t>>& out) {
    if (rest.is_identity()) {
        out.push_back(current);
        return;
    }
    std::int64_t rest_grading = grading_value(spec, rest);
    for (std::size_t i = min_index; i < divisor_atoms.size(); ++i) {
        // pool is grading-ascending and a divisor's grading never exceeds the element's
        if (grading_value(spec, divisor_atoms[i]) > rest_grading) break;
        if (!divides(spec, divisor_atoms[i], rest)) continue;
        current.push_back(i);
        factorization_dfs(spec, divisor_atoms, cofactor(spec, divisor_atoms[i], rest), i,
                          current, out);
        current.pop_back();
    }
}

FactorizationSet factorizations_impl(const MonoidSpec& spec, const MonoidElement& x,
                                     std::uint64_t atom_bound,
                                     const std::vector<MonoidElement>& atom_pool) {
    FactorizationSet fs;
    fs.element = x;
    if (x.is_identity()) {
        fs.multisets.push_back({});
        return fs;
    }
    for (const auto& a : atom_pool) {
        if (!divides(spec, a, x)) continue;
        if (static_cast<std::uint64_t>(grading_value(spec, a)) > atom_bound)
            throw bound_error("atom " + a.str() + " divides " + x.str() +
                              " but exceeds atom_bound " + std::to_string(atom_bound));
        fs.atoms.push_back(a);
    }
    std::vector<std::size_t> current;
    factorization_dfs(spec, fs.atoms, x, 0, current, fs.multisets);
    return fs;
}

} // namespace

FactorizationSet factorizations(const MonoidSpec& spec, const MonoidElement& x,
                                std::uint64_t atom_bound) {
    if (!membership(spec, x)) throw spec_error(x.str() + " is not a member");
    if (const auto* pres = std::get_if<KrullPresentation>(&spec))
        to_exponents(*pres, x); // reject elements outside the divisor truncation
    std::uint64_t gx = static_cast<std::uint64_t>(grading_value(spec, x));
    auto pool = atoms_up_to(spec, gx);
    return factorizations_impl(spec, x, atom_bound, pool);
}

std::set<std::uint64_t> lengths(const MonoidSpec& spec, const MonoidElement& x,
                                std::uint64_t atom_bound) {
    return factorizations(spec, x, atom_bound).lengths();
}

BoundedVerdict<PrimePair> is_prime_bounded(const MonoidSpec& spec,
                                           const MonoidElement& p,
                                           std::uint64_t bound) {
    if (!is_atom(spec, p)) throw spec_error(p.str() + " is not an atom");
    auto elems = enumerate_elements(spec, bound);

    std::vector<bool> divisible(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
        divisible[i] = divides(spec, p, elems[i]);

    BoundedVerdict<PrimePair> verdict;
    verdict.bound = bound;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (divisible[i]) continue;
        for (std::size_t j = i; j < elems.size(); ++j) {
            if (divisible[j]) continue;
            MonoidElement bc = combine(spec, elems[i], elems[j]);
            if (divides(spec, p, bc)) {
                verdict.witness = PrimePair{elems[i], elems[j]};
                return verdict;
            }
        }
    }
    return verdict;
}

std::uint64_t default_power_bound(const MonoidSpec& spec) {
    if (const auto* pres = std::get_if<KrullPresentation>(&spec))
        return static_cast<std::uint64_t>(pres->group.exponent());
    return 6;
}

StrongAtomVerdict is_strong_atom_bounded(const MonoidSpec& spec, const MonoidElement& a,
                                         std::uint64_t power_bound,
                                         std::uint64_t atom_bound) {
    if (!is_atom(spec, a)) throw spec_error(a.str() + " is not an atom");
    StrongAtomVerdict verdict;
    verdict.power_bound = power_bound;
    MonoidElement power = a;
    for (std::uint64_t n = 1; n <= power_bound; ++n) {
        if (n > 1) power = combine(spec, power, a);
        auto fs = factorizations(spec, power, atom_bound);
        if (fs.multisets.size() > 1) {
            verdict.kind = StrongAtomVerdict::Kind::Refuted;
            verdict.witness = PowerWitness{n, std::move(fs)};
            return verdict;
        }
    }
    verdict.kind = StrongAtomVerdict::Kind::Unrefuted;
    return verdict;
}

StrongAtomVerdict is_strong_atom(const MonoidSpec& spec, const MonoidElement& a,
                                 std::uint64_t power_bound, std::uint64_t atom_bound) {
    if (const auto* pres = std::get_if<KrullPresentation>(&spec)) {
        auto exps = to_exponents(*pres, a);
        if (!presentation_is_atom(*pres, exps))
            throw spec_error(a.str() + " is not an atom");
        StrongAtomVerdict verdict;
        // exact: a = p^k(p) on a single divisor
        bool strong = exps.size() == 1 &&
                      exps.begin()->second ==
                          static_cast<std::uint64_t>(
                              pres->divisor_checked(exps.begin()->first).order);
        verdict.kind = strong ? StrongAtomVerdict::Kind::ExactStrong
                              : StrongAtomVerdict::Kind::ExactNotStrong;
        return verdict;
    }
    if (const auto* affine = std::get_if<AffineMonoidSpec>(&spec)) {
        if (!is_atom(spec, a)) throw spec_error(a.str() + " is not an atom");
        StrongAtomVerdict verdict;
        auto strong = cone::strong_atoms_affine(*affine);
        bool found = std::find(strong.begin(), strong.end(), a) != strong.end();
        verdict.kind = found ? StrongAtomVerdict::Kind::ExactStrong
                             : StrongAtomVerdict::Kind::ExactNotStrong;
        return verdict;
    }
    return is_strong_atom_bounded(spec, a, power_bound, atom_bound);
}

UfmHfmReport check_ufm_hfm_bounded(const MonoidSpec& spec, std::uint64_t bound) {
    auto elems = enumerate_elements(spec, bound);
    auto pool = atoms_up_to(spec, bound);

    UfmHfmReport report;
    report.ufm.bound = bound;
    report.hfm.bound = bound;
    const auto* pres = std::get_if<KrullPresentation>(&spec);
    for (const auto& x : elems) {
        if (x.is_identity()) continue;
        if (pres && !to_exponents_opt(*pres, x)) continue; // outside the truncation
        auto fs = factorizations_impl(spec, x, bound, pool);
        if (!report.ufm.witness && fs.multisets.size() > 1) report.ufm.witness = x;
        if (!report.hfm.witness && fs.lengths().size() > 1) report.hfm.witness = x;
        if (report.ufm.witness && report.hfm.witness) break;
    }
    return report;
}

} // namespace krull
