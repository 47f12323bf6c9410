#include "krull/decay.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace krull {

namespace {

std::optional<std::uint64_t> checked_pow_u64(std::uint64_t base, std::uint64_t e) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(v, base, &v)) return std::nullopt;
    }
    return v;
}

} // namespace

StrongAtom make_strong_atom(const KrullPresentation& pres, const PrimeDivisor& d) {
    StrongAtom a;
    a.divisor_id = d.id;
    a.k = d.order;
    a.element = MonoidElement::exponent_vector(
        {{d.id, static_cast<std::uint64_t>(d.order)}});
    if (pres.integer_family()) {
        a.value = checked_pow_u64(static_cast<std::uint64_t>(d.id),
                                  static_cast<std::uint64_t>(d.order));
        if (!a.value)
            throw bound_error("strong atom value " + d.display + "^" +
                              std::to_string(d.order) + " overflows 64 bits");
        a.label = std::to_string(*a.value);
    } else {
        a.label = d.order == 1 ? d.display
                               : d.display + "^" + std::to_string(d.order);
    }
    return a;
}

std::vector<StrongAtom> strong_atoms(const KrullPresentation& pres) {
    std::vector<StrongAtom> out;
    out.reserve(pres.divisors.size());
    for (const auto& d : pres.divisors) out.push_back(make_strong_atom(pres, d));
    return out;
}

std::vector<StrongAtom> strong_atoms_up_to(const KrullPresentation& pres,
                                           std::uint64_t bound) {
    std::vector<StrongAtom> out;
    for (const auto& d : pres.divisors) {
        if (pres.integer_family()) {
            auto v = checked_pow_u64(static_cast<std::uint64_t>(d.id),
                                     static_cast<std::uint64_t>(d.order));
            if (!v || *v > bound) continue;
        } else if (static_cast<std::uint64_t>(d.order) > bound) {
            continue;
        }
        out.push_back(make_strong_atom(pres, d));
    }
    if (pres.integer_family())
        std::sort(out.begin(), out.end(),
                  [](const StrongAtom& a, const StrongAtom& b) { return *a.value < *b.value; });
    return out;
}

DecayDecomposition decay(const KrullPresentation& pres, const MonoidElement& x) {
    auto exps = to_exponents(pres, x);
    if (!pres.group.is_zero(class_of(pres, x)))
        throw spec_error(x.str() + " is not a member (nonzero class)");

    DecayDecomposition d;
    d.element = x;
    d.delta = Rat(0);
    if (exps.empty()) return d; // identity: m = 1, delta = 0

    std::uint64_t m = 1;
    for (auto& [id, e] : exps) {
        auto k = static_cast<std::uint64_t>(pres.divisor_checked(id).order);
        m = std::lcm(m, k / std::gcd(k, e));
    }
    d.m = m;
    for (auto& [id, e] : exps) {
        const PrimeDivisor& div = pres.divisor_checked(id);
        auto k = static_cast<std::uint64_t>(div.order);
        std::uint64_t me;
        if (__builtin_mul_overflow(m, e, &me))
            throw bound_error("decay exponent overflows 64 bits");
        // k | m*e by the choice of m as lcm of k/gcd(k, e)
        d.exponents.emplace_back(make_strong_atom(pres, div), me / k);
        d.delta += make_rat(Int(e), Int(k));
    }
    // re-expansion identity: x(a) * k(p) == m * e_p for every supported divisor
    for (auto& [atom, xa] : d.exponents) {
        std::uint64_t e = exps.at(atom.divisor_id);
        if (xa * static_cast<std::uint64_t>(atom.k) != m * e)
            throw error("decay re-expansion mismatch");
    }
    if (static_cast<std::uint64_t>(pres.group.exponent()) % m != 0)
        throw error("decay exponent does not divide the group exponent");
    return d;
}

std::pair<std::vector<std::pair<StrongAtom, Rat>>, Rat>
lambda_delta(const KrullPresentation& pres, const MonoidElement& x) {
    DecayDecomposition d = decay(pres, x);
    std::vector<std::pair<StrongAtom, Rat>> lambdas;
    for (auto& [atom, e] : d.exponents)
        lambdas.emplace_back(atom, make_rat(Int(e), Int(d.m)));
    return {std::move(lambdas), d.delta};
}

bool verify_proportionality(const KrullPresentation& pres, const MonoidElement& x,
                            std::uint64_t m1, std::uint64_t m2) {
    auto exps = to_exponents(pres, x);
    if (!pres.group.is_zero(class_of(pres, x)))
        throw spec_error(x.str() + " is not a member");
    if (m1 == 0 || m2 == 0) throw spec_error("decay exponents must be positive");
    for (auto& [id, e] : exps) {
        auto k = static_cast<std::uint64_t>(pres.divisor_checked(id).order);
        if ((m1 * e) % k != 0)
            throw spec_error("m1 = " + std::to_string(m1) +
                             " is not a valid decay exponent for " + x.str());
        if ((m2 * e) % k != 0)
            throw spec_error("m2 = " + std::to_string(m2) +
                             " is not a valid decay exponent for " + x.str());
    }
    for (auto& [id, e] : exps) {
        auto k = static_cast<std::uint64_t>(pres.divisor_checked(id).order);
        Rat r1 = make_rat(Int(m1 * e / k), Int(m1));
        Rat r2 = make_rat(Int(m2 * e / k), Int(m2));
        if (r1 != r2) return false;
    }
    return true;
}

std::vector<SplitEntry> split_report(const KrullPresentation& pres) {
    if (pres.group.order() != 2)
        throw spec_error("split report requires class group Z/2");
    std::vector<const PrimeDivisor*> class1;
    for (const auto& d : pres.divisors)
        if (!pres.group.is_zero(d.cls)) class1.push_back(&d);

    std::vector<SplitEntry> out;
    for (std::size_t i = 0; i < class1.size(); ++i)
        for (std::size_t j = i + 1; j < class1.size(); ++j) {
            SplitEntry entry;
            if (pres.integer_family()) {
                std::uint64_t v;
                if (__builtin_mul_overflow(static_cast<std::uint64_t>(class1[i]->id),
                                           static_cast<std::uint64_t>(class1[j]->id), &v))
                    throw bound_error("split atom value overflows 64 bits");
                entry.atom = MonoidElement::natural(v);
            } else {
                entry.atom = MonoidElement::exponent_vector(
                    {{class1[i]->id, 1}, {class1[j]->id, 1}});
            }
            entry.a1 = make_strong_atom(pres, *class1[i]);
            entry.a2 = make_strong_atom(pres, *class1[j]);
            out.push_back(std::move(entry));
        }
    MonoidSpec spec = pres;
    std::sort(out.begin(), out.end(), [&](const SplitEntry& a, const SplitEntry& b) {
        return canonical_less(spec, a.atom, b.atom);
    });
    return out;
}

std::string decay_to_json(const DecayDecomposition& d) {
    nlohmann::json j;
    j["m"] = d.m;
    nlohmann::json exps = nlohmann::json::array();
    for (const auto& [atom, e] : d.exponents)
        exps.push_back(nlohmann::json{{"atom", atom.label}, {"e", e}});
    j["exponents"] = std::move(exps);
    j["delta"] = rat_frac_str(d.delta);
    return j.dump();
}

} // namespace krull
