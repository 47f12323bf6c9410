#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "krull/cone.hpp"
#include "krull/decay.hpp"
#include "krull/factorization.hpp"
#include "krull/numberfield.hpp"
#include "krull/presets.hpp"
#include "krull/primes.hpp"
#include "krull/zeta.hpp"

namespace krull::verify {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

bool run_check(std::ostream& out, const std::string& name,
               const std::function<bool()>& fn) {
    bool ok = false;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        out << "[FAIL] " << name << " (exception: " << e.what() << ")\n";
        return false;
    }
    out << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    return ok;
}

} // namespace

MonoidElement random_member(const KrullPresentation& pres, std::uint64_t& rng_state) {
    std::map<std::int64_t, std::uint64_t> exps;
    for (const auto& d : pres.divisors) {
        std::uint64_t e = splitmix64(rng_state) % 4;
        if (e) exps[d.id] = e;
    }
    GroupElem cls = class_of(pres, MonoidElement::exponent_vector(exps));
    if (!pres.group.is_zero(cls)) {
        // BFS through the class group for a correction reaching -cls
        GroupElem target = pres.group.neg(cls);
        std::map<GroupElem, std::pair<GroupElem, std::int64_t>> parent;
        std::deque<GroupElem> queue{pres.group.zero()};
        parent[pres.group.zero()] = {pres.group.zero(), -1};
        while (!queue.empty()) {
            GroupElem cur = queue.front();
            queue.pop_front();
            if (cur == target) break;
            for (const auto& d : pres.divisors) {
                GroupElem nxt = pres.group.add(cur, d.cls);
                if (parent.count(nxt)) continue;
                parent[nxt] = {cur, d.id};
                queue.push_back(nxt);
            }
        }
        if (!parent.count(target))
            throw error("class unreachable from the divisor classes");
        for (GroupElem cur = target; !(cur == pres.group.zero());) {
            auto& [prev, id] = parent[cur];
            exps[id] += 1;
            cur = prev;
        }
    }
    return MonoidElement::exponent_vector(std::move(exps));
}

DecaySuiteResult decay_property_suite(std::uint64_t pairs_per_group,
                                      std::uint64_t seed) {
    DecaySuiteResult result;
    const std::vector<std::vector<std::int64_t>> groups = {{2}, {3}, {2, 2}, {6}};
    std::uint64_t rng = seed;

    for (const auto& moduli : groups) {
        ClassGroup group(moduli);
        std::vector<std::pair<std::int64_t, GroupElem>> assignments;
        for (std::int64_t id = 1; id <= 8; ++id) {
            GroupElem cls(group.rank());
            for (std::size_t i = 0; i < cls.size(); ++i)
                cls[i] = static_cast<std::int64_t>(splitmix64(rng) %
                                                   static_cast<std::uint64_t>(
                                                       group.moduli[i]));
            assignments.emplace_back(id, cls);
        }
        auto pres = divisor_theory_preset(moduli, assignments);
        MonoidSpec spec = pres;
        auto exponent = static_cast<std::uint64_t>(pres.group.exponent());

        // Kronecker delta on the strong atoms
        for (const auto& a : strong_atoms(pres)) {
            auto d = decay(pres, a.element);
            if (d.m != 1 || d.lambda_of(a.divisor_id) != 1 || d.delta != 1)
                ++result.kronecker_violations;
            for (const auto& b : strong_atoms(pres))
                if (b.divisor_id != a.divisor_id && d.lambda_of(b.divisor_id) != 0)
                    ++result.kronecker_violations;
        }

        for (std::uint64_t n = 0; n < pairs_per_group; ++n) {
            MonoidElement x = random_member(pres, rng);
            MonoidElement y = random_member(pres, rng);
            MonoidElement xy = combine(spec, x, y);
            auto dx = decay(pres, x);
            auto dy = decay(pres, y);
            auto dxy = decay(pres, xy);
            ++result.pairs_checked;

            if (dx.delta + dy.delta != dxy.delta) ++result.additivity_violations;
            std::set<std::int64_t> support;
            for (auto& [a, e] : dx.exponents) support.insert(a.divisor_id);
            for (auto& [a, e] : dy.exponents) support.insert(a.divisor_id);
            for (auto& [a, e] : dxy.exponents) support.insert(a.divisor_id);
            for (auto id : support)
                if (dx.lambda_of(id) + dy.lambda_of(id) != dxy.lambda_of(id))
                    ++result.additivity_violations;

            auto exps = to_exponents(pres, x);
            for (auto& [a, e] : dx.exponents)
                if (e * static_cast<std::uint64_t>(a.k) !=
                    dx.m * exps.at(a.divisor_id))
                    ++result.reexpansion_violations;
            if (exponent % dx.m != 0) ++result.exponent_divisibility_violations;
            if (!x.is_identity() &&
                !verify_proportionality(pres, x, dx.m, 2 * dx.m))
                ++result.proportionality_violations;
        }
    }
    return result;
}

namespace {

// ---- check 1: class map is a homomorphism --------------------------------

bool check_class_homomorphism() {
    auto pres = hilbert_preset(500);
    MonoidSpec spec = pres;
    std::uint64_t rng = 1;
    for (int i = 0; i < 500; ++i) {
        // quantified over the ambient free monoid, membership not needed
        std::map<std::int64_t, std::uint64_t> ex, ey;
        for (const auto& d : pres.divisors) {
            if (splitmix64(rng) % 8 == 0) ex[d.id] = splitmix64(rng) % 3 + 1;
            if (splitmix64(rng) % 8 == 0) ey[d.id] = splitmix64(rng) % 3 + 1;
        }
        MonoidElement x = MonoidElement::exponent_vector(ex);
        MonoidElement y = MonoidElement::exponent_vector(ey);
        GroupElem sum = pres.group.add(class_of(pres, x), class_of(pres, y));
        if (!(class_of(pres, combine(spec, x, y)) == sum)) return false;
    }
    return true;
}

// ---- check 2: divisibility is a partial preorder --------------------------

bool check_divides_preorder() {
    auto pres = hilbert_preset(300);
    MonoidSpec spec = pres;
    auto elems = enumerate_elements(spec, 300);
    for (const auto& x : elems)
        if (!divides(spec, x, x)) return false;
    std::uint64_t rng = 2;
    for (int i = 0; i < 300; ++i) {
        const auto& a = elems[splitmix64(rng) % elems.size()];
        const auto& k = elems[splitmix64(rng) % elems.size()];
        const auto& j = elems[splitmix64(rng) % elems.size()];
        MonoidElement b = combine(spec, a, k);
        MonoidElement c = combine(spec, b, j);
        if (!divides(spec, a, b) || !divides(spec, b, c) || !divides(spec, a, c))
            return false;
    }
    return true;
}

// ---- check 3: the Hilbert embedding is a divisor theory (bounded) ---------

bool check_hilbert_divisor_theory() {
    constexpr std::uint64_t B = 300;
    for (std::uint64_t b = 1; b <= B; b += 4)
        for (std::uint64_t c = b; c <= B; c += 4) {
            bool in_f = c % b == 0;               // both odd, so F-divisibility
            bool in_h = in_f && (c / b) % 4 == 1; // quotient must stay in H
            if (in_f != in_h) return false;
        }
    auto primes = primes_up_to(B);
    for (std::uint64_t d = 3; d <= B; d += 4) { // the odd non-members
        std::uint64_t p1 = 0, p2 = 0;
        for (auto p : primes) {
            if (p % 4 != 3 || d % p == 0) continue;
            if (!p1) p1 = p;
            else if (!p2) { p2 = p; break; }
        }
        if (!p2) return false;
        if (std::gcd(d * p1, d * p2) != d) return false;
        if ((d * p1) % 4 != 1 || (d * p2) % 4 != 1) return false;
    }
    return true;
}

// ---- checks 4 & 5: exact cone solver vs independent oracles ---------------

std::vector<cone::IntVector> random_generators(std::uint64_t& rng, std::size_t d,
                                               std::size_t count) {
    std::vector<cone::IntVector> gens;
    while (gens.size() < count) {
        cone::IntVector g(d);
        bool nonzero = false;
        for (auto& c : g) {
            c = static_cast<std::int64_t>(splitmix64(rng) % 7) - 3;
            nonzero |= (c != 0);
        }
        if (nonzero) gens.push_back(std::move(g));
    }
    return gens;
}

bool check_cone_membership_oracles() {
    std::uint64_t rng = 3;
    for (std::size_t d : {2u, 3u}) {
        for (int instance = 0; instance < 20; ++instance) {
            auto gens = random_generators(rng, d, 3 + splitmix64(rng) % 3);

            // positive case: a known nonnegative rational combination
            cone::RationalVector v(d, Rat(0));
            for (const auto& g : gens) {
                Rat c = make_rat(static_cast<long>(splitmix64(rng) % 17), 8);
                for (std::size_t j = 0; j < d; ++j) v[j] += c * Rat(g[j]);
            }
            auto cert = cone::cone_membership(gens, v);
            if (!cert) return false;
            cone::RationalVector back(d, Rat(0));
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if ((*cert)[i] < 0) return false;
                for (std::size_t j = 0; j < d; ++j)
                    back[j] += (*cert)[i] * Rat(gens[i][j]);
            }
            if (back != v) return false;

            // random query: any false answer must exhibit a separating
            // functional on a small integer grid
            cone::RationalVector w(d);
            for (std::size_t j = 0; j < d; ++j)
                w[j] = Rat(static_cast<std::int64_t>(splitmix64(rng) % 13) - 6);
            auto verdict = cone::cone_membership(gens, w);
            if (verdict) {
                cone::RationalVector back2(d, Rat(0));
                for (std::size_t i = 0; i < gens.size(); ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        back2[j] += (*verdict)[i] * Rat(gens[i][j]);
                if (back2 != w) return false;
            } else {
                const std::int64_t R = 18;
                bool separated = false;
                std::vector<std::int64_t> y(d, -R);
                while (!separated) {
                    bool ok = true;
                    for (const auto& g : gens) {
                        std::int64_t dot = 0;
                        for (std::size_t j = 0; j < d; ++j) dot += y[j] * g[j];
                        if (dot < 0) { ok = false; break; }
                    }
                    if (ok) {
                        Rat dot(0);
                        for (std::size_t j = 0; j < d; ++j) dot += Rat(y[j]) * w[j];
                        if (dot < 0) separated = true;
                    }
                    std::size_t j = 0;
                    while (j < d && y[j] == R) y[j++] = -R;
                    if (j == d) break;
                    ++y[j];
                }
                if (!separated) return false;
            }
        }
    }
    return true;
}

bool check_gordan_duality() {
    std::uint64_t rng = 4;
    for (std::size_t d : {2u, 3u}) {
        for (int instance = 0; instance < 25; ++instance) {
            auto gens = random_generators(rng, d, 2 + splitmix64(rng) % 4);
            bool pointed = cone::is_pointed(gens);
            bool graded = true;
            try {
                auto lam = cone::positive_grading(gens);
                for (const auto& g : gens) {
                    std::int64_t dot = 0;
                    for (std::size_t j = 0; j < d; ++j) dot += lam[j] * g[j];
                    if (dot < 1) return false;
                }
            } catch (const spec_error&) {
                graded = false;
            }
            if (pointed != graded) return false;
        }
    }
    return true;
}

// ---- check 6: geometric strong atoms vs the bounded certificate -----------

bool check_affine_strong_agreement() {
    const std::vector<std::pair<int, std::vector<std::vector<std::int64_t>>>> cases = {
        {2, {{0, 2}, {1, 1}, {2, 0}}},
        {3, {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}}},
        {2, {{2, 0}, {3, 0}, {0, 1}}},
    };
    for (const auto& [dim, gens] : cases) {
        auto spec_a = make_affine_spec(dim, gens);
        MonoidSpec spec = spec_a;
        auto strong = cone::strong_atoms_affine(spec_a);
        for (const auto& g : gens) {
            MonoidElement el = MonoidElement::int_vector(g);
            if (!is_atom(spec, el)) continue;
            bool geometric =
                std::find(strong.begin(), strong.end(), el) != strong.end();
            auto bounded = is_strong_atom_bounded(spec, el, 6, 64);
            if (bounded.kind == StrongAtomVerdict::Kind::Refuted && geometric)
                return false;
            if (geometric && bounded.kind != StrongAtomVerdict::Kind::Unrefuted)
                return false;
        }
    }
    return true;
}

// ---- check 8: heap enumeration order, dedup, and completeness -------------

bool check_heap_enumeration() {
    auto pres = naturals_preset(50);
    auto scale = power_scale(pres, 2);

    std::vector<double> sigmas;
    std::vector<std::uint64_t> primes;
    for (const auto& d : pres.divisors) {
        sigmas.push_back(scale.at(d.id).approx);
        primes.push_back(static_cast<std::uint64_t>(d.id));
    }

    // brute-force oracle: all 50-smooth numbers <= X in order
    constexpr std::uint64_t X = 5000;
    std::vector<std::uint64_t> smooth;
    std::function<void(std::size_t, std::uint64_t)> gen = [&](std::size_t i,
                                                              std::uint64_t n) {
        if (i == primes.size()) {
            smooth.push_back(n);
            return;
        }
        for (std::uint64_t v = n; v <= X; v *= primes[i]) {
            gen(i + 1, v);
            if (v > X / primes[i]) break;
        }
    };
    gen(0, 1);
    std::sort(smooth.begin(), smooth.end());

    ClosureEnumerator en(sigmas);
    std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> seen;
    double prev = 0;
    for (std::size_t t = 0; t < 10000; ++t) {
        auto term = en.next();
        if (term.sigma < prev) return false;
        prev = term.sigma;
        if (!seen.insert(term.exps).second) return false;
        std::uint64_t n = 1;
        for (auto& [idx, e] : term.exps)
            for (std::uint32_t r = 0; r < e; ++r) n *= primes[idx];
        if (t < smooth.size() && n != smooth[t]) return false;
    }
    return true;
}

// ---- check 9: m(x) = 1 elements are exactly the strong-atom products ------

bool check_equivalence_class_enumeration() {
    constexpr std::uint64_t B = 10000;
    auto pres = hilbert_preset(B);

    std::set<std::uint64_t> m1;
    for (std::uint64_t n = 5; n <= B; n += 4)
        if (decay(pres, MonoidElement::natural(n)).m == 1) m1.insert(n);

    std::set<std::uint64_t> products; // closure of the strong atoms, <= B
    std::vector<std::uint64_t> values;
    for (const auto& a : strong_atoms_up_to(pres, B)) values.push_back(*a.value);
    std::deque<std::uint64_t> queue{1};
    std::set<std::uint64_t> seen{1};
    while (!queue.empty()) {
        std::uint64_t n = queue.front();
        queue.pop_front();
        for (auto v : values) {
            if (n > B / v) continue;
            if (seen.insert(n * v).second) {
                products.insert(n * v);
                queue.push_back(n * v);
            }
        }
    }
    return m1 == products;
}

// ---- check 10: finite-subset Euler identity, exact ------------------------

bool check_finite_subset_lemma() {
    std::uint64_t rng = 5;
    for (int i = 0; i < 20; ++i) {
        std::size_t size = 1 + splitmix64(rng) % 3;
        std::vector<Rat> sigmas;
        for (std::size_t k = 0; k < size; ++k) {
            long den = static_cast<long>(splitmix64(rng) % 6) + 1;
            long num = den + 1 + static_cast<long>(splitmix64(rng) % 50);
            sigmas.push_back(make_rat(num, den));
        }
        if (closure_sum_exact(sigmas) != euler_product_exact(sigmas)) return false;
        if (closure_box_sum_enumerated(sigmas, 8) !=
            closure_box_sum_closed_form(sigmas, 8))
            return false;
    }
    return true;
}

// ---- check 11: number-field routes agree -----------------------------------

bool check_numberfield_routes() {
    for (std::int64_t d : {-1, -5}) {
        auto field = make_field(d, d == -1 ? 1 : 2, 2000);
        auto oracle = ideal_counts_oracle_up_to(field, 2000);
        auto enumerated = ideal_counts_by_enumeration(field, 2000);
        for (std::uint64_t n = 1; n <= 2000; ++n)
            if (oracle[n] != enumerated[n]) return false;
    }
    // strong atoms through the presentation path and the field path
    auto field = make_field(-5, 2, 500);
    auto pres = presentation_from_splitting(field, 500);
    auto ideals = prime_ideals_up_to_norm(field, 500);
    std::map<std::int64_t, const PrimeIdeal*> by_id;
    for (const auto& ideal : ideals) by_id[ideal_divisor_id(ideal)] = &ideal;

    std::set<std::tuple<std::uint64_t, int, int>> via_pres, via_field;
    for (const auto& atom : strong_atoms(pres)) {
        const PrimeIdeal* ideal = by_id.at(atom.divisor_id);
        std::uint64_t norm_pow = 1;
        for (int r = 0; r < atom.k; ++r) norm_pow *= ideal->norm;
        if (norm_pow <= 500)
            via_pres.insert({ideal->p, ideal->conjugate_id, static_cast<int>(atom.k)});
    }
    for (const auto& atom : principal_monoid_strong_atoms(field, 500))
        via_field.insert({atom.ideal.p, atom.ideal.conjugate_id, atom.k});
    if (via_pres != via_field) return false;

    // class number 2: the square of every non-principal ideal is principal
    for (const auto& ideal : ideals)
        if (!ideal.principal &&
            !norm_form_represents(field, ideal.norm * ideal.norm))
            return false;
    return true;
}

// ---- check 12: brackets stay ordered ---------------------------------------

bool check_bracket_monotonicity() {
    auto pres = naturals_preset(1000);
    auto scale = power_scale(pres, 2);
    double prev = 0;
    for (std::uint64_t budget : {100, 1000, 10000}) {
        auto est = zeta_partial_sum(pres, scale, budget, 1e-3);
        if (est.partial_sum < prev) return false;
        if (est.lower > est.partial_sum) return false;
        if (!est.upper || est.partial_sum > *est.upper) return false;
        prev = est.partial_sum;
    }
    return true;
}

// ---- check 13: trivial class group forces unique factorization ------------

bool check_trivial_class_group_ufm() {
    {
        MonoidSpec spec = free_preset(3);
        auto report = check_ufm_hfm_bounded(spec, 6);
        if (report.ufm.refuted() || report.hfm.refuted()) return false;
    }
    {
        MonoidSpec spec = naturals_preset(100);
        auto report = check_ufm_hfm_bounded(spec, 100);
        if (report.ufm.refuted() || report.hfm.refuted()) return false;
    }
    return true;
}

} // namespace

bool run_suite(std::ostream& out) {
    bool ok = true;
    ok &= run_check(out, "class map is a homomorphism", check_class_homomorphism);
    ok &= run_check(out, "divisibility is a partial preorder", check_divides_preorder);
    ok &= run_check(out, "Hilbert embedding satisfies the divisor-theory conditions",
                    check_hilbert_divisor_theory);
    ok &= run_check(out, "cone membership agrees with certificate/separator oracles",
                    check_cone_membership_oracles);
    ok &= run_check(out, "pointedness is dual to a positive grading",
                    check_gordan_duality);
    ok &= run_check(out, "geometric strong atoms match the bounded certificates",
                    check_affine_strong_agreement);
    ok &= run_check(out, "decay laws hold on random members (4 class groups)", [] {
        return decay_property_suite(300, 99).total() == 0;
    });
    ok &= run_check(out, "heap enumeration is ordered, duplicate-free, complete",
                    check_heap_enumeration);
    ok &= run_check(out, "m(x)=1 elements equal the strong-atom closure",
                    check_equivalence_class_enumeration);
    ok &= run_check(out, "finite-subset Euler identity holds exactly",
                    check_finite_subset_lemma);
    ok &= run_check(out, "number-field ideal counts and strong atoms agree",
                    check_numberfield_routes);
    ok &= run_check(out, "zeta brackets stay ordered as the budget grows",
                    check_bracket_monotonicity);
    ok &= run_check(out, "trivial class group gives unique factorization",
                    check_trivial_class_group_ufm);
    out << (ok ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return ok;
}

} // namespace krull::verify
