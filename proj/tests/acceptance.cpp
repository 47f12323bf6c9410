// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance and runtime limit is pinned here.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "krull/cone.hpp"
#include "krull/decay.hpp"
#include "krull/factorization.hpp"
#include "krull/numberfield.hpp"
#include "krull/presets.hpp"
#include "krull/primes.hpp"
#include "krull/zeta.hpp"
#include "verify_suite.hpp"

using namespace krull;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (ok ? "[PASS] " : "[FAIL] ") << "C" << id << ": " << name << " ("
         << elapsed << " s)";
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << "\n";
    if (!ok) ++failures;
}

MonoidElement nat(std::uint64_t n) { return MonoidElement::natural(n); }

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------

bool c1_hilbert_strong_atoms(std::string& detail) {
    auto pres = hilbert_preset(2000);
    std::set<std::uint64_t> got;
    for (const auto& a : strong_atoms_up_to(pres, 2000)) got.insert(*a.value);

    std::set<std::uint64_t> expected;
    for (auto p : primes_up_to(2000))
        if (p % 4 == 1) expected.insert(p);
    for (auto p : primes_up_to(44))
        if (p % 4 == 3 && p * p <= 2000) expected.insert(p * p);

    detail = std::to_string(got.size()) + " strong atoms";
    return got == expected;
}

bool c2_hilbert_hfm_not_ufm(std::string& detail) {
    MonoidSpec spec = hilbert_preset(10000);
    auto report = check_ufm_hfm_bounded(spec, 10000);
    if (report.hfm.refuted()) {
        detail = "|L(x)| > 1 at x = " + report.hfm.witness->str();
        return false;
    }
    if (!report.ufm.refuted() || report.ufm.witness->value != 441) {
        detail = "UFM witness is not 441";
        return false;
    }
    auto fs = factorizations(spec, nat(441), 441);
    std::set<std::multiset<std::uint64_t>> got;
    for (const auto& m : fs.multisets) {
        std::multiset<std::uint64_t> values;
        for (auto idx : m) values.insert(fs.atoms[idx].value);
        got.insert(std::move(values));
    }
    detail = "HFM unrefuted to 10^4, UFM refuted at 441";
    return got == std::set<std::multiset<std::uint64_t>>{{21, 21}, {9, 49}};
}

bool c3_finite_subset_exact(std::string& detail) {
    if (closure_sum_exact({Rat(5), Rat(13)}) != make_rat(65, 48)) {
        detail = "the {5,13} closure sum is not 65/48";
        return false;
    }
    auto pres = hilbert_preset(300);
    std::vector<Rat> atom_values;
    for (const auto& a : strong_atoms(pres))
        atom_values.emplace_back(static_cast<unsigned long>(*a.value));

    std::uint64_t rng = 20250810;
    for (int i = 0; i < 20; ++i) {
        std::size_t size = 1 + splitmix(rng) % 3;
        std::vector<Rat> sigmas;
        for (std::size_t k = 0; k < size; ++k) {
            // random rational scale value > 1 on a random strong atom
            long den = static_cast<long>(splitmix(rng) % 6) + 1;
            long bump = static_cast<long>(splitmix(rng) % 40);
            Rat base = atom_values[splitmix(rng) % atom_values.size()];
            sigmas.push_back(base + make_rat(den + bump, den));
        }
        if (closure_sum_exact(sigmas) != euler_product_exact(sigmas)) {
            detail = "subset " + std::to_string(i) + " disagreed";
            return false;
        }
    }
    detail = "20 random subsets, exact equality";
    return true;
}

bool c4_wallis(std::string& detail) {
    auto pres = naturals_preset(25000);
    auto scale = wallis_scale(pres);
    std::vector<std::pair<double, std::int64_t>> atoms;
    for (const auto& d : pres.divisors) atoms.emplace_back(scale.at(d.id).approx, d.id);
    std::sort(atoms.begin(), atoms.end());
    if (atoms.size() < 2500) {
        detail = "fewer than 2500 presented atoms";
        return false;
    }
    std::vector<double> sigmas;
    for (std::size_t i = 0; i < 2500; ++i) sigmas.push_back(atoms[i].first);
    double product = euler_product_truncated(sigmas);
    double target = std::numbers::pi / 2;
    double rel = std::abs(product - target) / target;
    std::ostringstream ss;
    ss.precision(10);
    ss << "product " << product << ", pi/2 " << target << ", relative gap " << rel;
    detail = ss.str();
    return rel < 1e-4;
}

bool c5_basel_bracket(std::string& detail) {
    auto pres = naturals_preset(1000);
    auto scale = power_scale(pres, 2);
    // analytic fact: sum over p > 1000 of p^-2 < sum over n > 1000 of n^-2 < 1e-3
    auto est = zeta_partial_sum(pres, scale, 100000, 1e-3);
    double target = std::numbers::pi * std::numbers::pi / 6;
    double width = *est.upper - est.lower;
    std::ostringstream ss;
    ss.precision(10);
    ss << "bracket [" << est.lower << ", " << *est.upper << "], width " << width;
    detail = ss.str();
    return est.lower <= target && target <= *est.upper && width < 5e-3;
}

bool c6_cone_regressions(std::string& detail) {
    auto rank2 = make_affine_spec(2, {{0, 2}, {1, 1}, {2, 0}});
    auto atoms2 = cone::strong_atoms_affine(rank2);
    std::set<std::vector<std::int64_t>> got2;
    for (const auto& a : atoms2) got2.insert(a.coords);
    if (got2 != std::set<std::vector<std::int64_t>>{{0, 2}, {2, 0}}) {
        detail = "rank-2 strong atoms wrong";
        return false;
    }

    auto rank3 = make_affine_spec(3, {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}});
    auto atoms3 = cone::strong_atoms_affine(rank3);
    std::set<std::vector<std::int64_t>> got3;
    for (const auto& a : atoms3) got3.insert(a.coords);
    std::set<std::vector<std::int64_t>> expected3{
        {1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
    if (got3 != expected3) {
        detail = "rank-3 strong atoms wrong";
        return false;
    }
    MonoidSpec spec3 = rank3;
    for (const auto& g : expected3) {
        auto verdict = is_prime_bounded(spec3, MonoidElement::int_vector(g), 2);
        if (!verdict.refuted()) {
            detail = "prime status not refuted in the rank-3 example";
            return false;
        }
    }

    std::vector<std::vector<std::int64_t>> circle;
    for (std::int64_t n = 0; n <= 10; ++n)
        circle.push_back({n * n - 1, 2 * n, n * n + 1});
    auto circle_spec = make_affine_spec(3, circle);
    auto circle_atoms = cone::strong_atoms_affine(circle_spec);
    std::set<std::vector<std::int64_t>> got_c;
    for (const auto& a : circle_atoms) got_c.insert(a.coords);
    std::set<std::vector<std::int64_t>> expected_c(circle.begin(), circle.end());
    if (got_c != expected_c) {
        detail = "circle-monoid strong atoms wrong";
        return false;
    }
    detail = "3 regressions exact";
    return true;
}

bool c7_decay_properties(std::string& detail) {
    auto result = verify::decay_property_suite(1000, 424242);
    std::ostringstream ss;
    ss << result.pairs_checked << " pairs, " << result.total() << " violations";
    detail = ss.str();
    return result.total() == 0 && result.pairs_checked >= 4000;
}

bool c8_non_ufm_euler_gap(std::string& detail) {
    auto pres = hilbert_preset(10000);
    auto scale = power_scale(pres, 2);
    auto report = check_euler_identity(pres, scale, 4000, 1e-2, 1e-3, 10000);
    std::ostringstream ss;
    ss.precision(10);
    ss << "full sum " << report.full_monoid_sum << ", product over P(H) "
       << report.prime_product << ", gap " << report.ufm_gap;
    detail = ss.str();
    return report.ufm_gap > 1.0 / 81.0 && !report.primes_are_all_strong_atoms;
}

bool c9_infinitude(std::string& detail) {
    auto pres = naturals_preset(100);
    auto scale = power_scale(pres, 2);
    auto report = infinitude_report(pres, scale, make_rat(19, 10), 1000000);
    if (!report.growth_violations || !report.anti_geometric_sum || !report.harmonic_sum) {
        detail = "report incomplete";
        return false;
    }
    std::ostringstream ss;
    ss.precision(6);
    ss << *report.growth_violations << " violations, anti-geometric "
       << *report.anti_geometric_sum << " >= harmonic " << *report.harmonic_sum;
    detail = ss.str();
    return *report.growth_violations == 0 &&
           *report.anti_geometric_sum >= *report.harmonic_sum &&
           std::abs(*report.harmonic_sum - 13.39) < 0.01;
}

bool c10_dedekind(std::string& detail) {
    for (std::int64_t d : {-1, -5}) {
        auto field = make_field(d, d == -1 ? 1 : 2, 10000);
        auto est = dedekind_zeta(field, 2, 10000);
        if (std::abs(est.partial_sum - est.truncated_product) >= 1e-3) {
            detail = "routes differ at d = " + std::to_string(d);
            return false;
        }
        auto oracle = ideal_counts_oracle_up_to(field, 10000);
        auto enumerated = ideal_counts_by_enumeration(field, 10000);
        for (std::uint64_t n = 1; n <= 10000; ++n)
            if (oracle[n] != enumerated[n]) {
                detail = "count mismatch at n = " + std::to_string(n);
                return false;
            }
    }
    // d = -5: the number-field strong atoms equal the Z/2 presentation's
    auto field = make_field(-5, 2, 10000);
    auto pres = presentation_from_splitting(field, 10000);
    auto ideals = prime_ideals_up_to_norm(field, 10000);
    std::map<std::int64_t, const PrimeIdeal*> by_id;
    for (const auto& ideal : ideals) by_id[ideal_divisor_id(ideal)] = &ideal;

    std::set<std::tuple<std::uint64_t, int, int>> via_pres, via_field;
    for (const auto& atom : strong_atoms(pres)) {
        const auto* ideal = by_id.at(atom.divisor_id);
        bool fits = true;
        std::uint64_t norm_pow = 1;
        for (int r = 0; r < atom.k; ++r) {
            norm_pow *= ideal->norm;
            fits &= norm_pow <= 10000;
        }
        if (fits)
            via_pres.insert({ideal->p, ideal->conjugate_id, static_cast<int>(atom.k)});
    }
    for (const auto& atom : principal_monoid_strong_atoms(field, 10000))
        via_field.insert({atom.ideal.p, atom.ideal.conjugate_id, atom.k});
    if (via_pres != via_field) {
        detail = "strong-atom paths disagree";
        return false;
    }
    detail = "routes agree to 10^-3; counts and strong atoms exact to 10^4";
    return true;
}

} // namespace

int main() {
    criterion(1, "Hilbert strong atoms to 2000", 1.0, c1_hilbert_strong_atoms);
    criterion(2, "Hilbert is HFM but not UFM to 10^4", 30.0, c2_hilbert_hfm_not_ufm);
    criterion(3, "finite-subset Euler lemma, exact rationals", 10.0,
              c3_finite_subset_exact);
    criterion(4, "Wallis product over 2500 atoms", 1.0, c4_wallis);
    criterion(5, "Basel bracketing", 5.0, c5_basel_bracket);
    criterion(6, "affine cone regressions", 1.0, c6_cone_regressions);
    criterion(7, "decay property suite (4 class groups x 1000 pairs)", 10.0,
              c7_decay_properties);
    criterion(8, "classical Euler formula fails for H", 5.0, c8_non_ufm_euler_gap);
    criterion(9, "infinitude evidence at c = 1.9 to 10^6", 10.0, c9_infinitude);
    criterion(10, "Dedekind cross-checks for d = -1, -5", 10.0, c10_dedekind);

    if (failures == 0) std::cout << "acceptance: all 10 criteria passed\n";
    else std::cout << "acceptance: " << failures << " criterion(s) FAILED\n";
    return failures == 0 ? 0 : 1;
}
