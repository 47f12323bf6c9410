#include <doctest.h>

#include <algorithm>
#include <set>

#include "krull/factorization.hpp"
#include "krull/presets.hpp"

using namespace krull;

namespace {

MonoidElement nat(std::uint64_t n) { return MonoidElement::natural(n); }

/// Independent oracle: atoms of H up to a bound via the 4k+1 sieve, removing
/// products of two smaller nontrivial members.
std::set<std::uint64_t> hilbert_atoms_oracle(std::uint64_t bound) {
    std::vector<std::uint64_t> members;
    for (std::uint64_t n = 5; n <= bound; n += 4) members.push_back(n);
    std::set<std::uint64_t> atoms(members.begin(), members.end());
    for (auto a : members)
        for (auto b : members) {
            if (a > bound / b) break;
            atoms.erase(a * b);
        }
    return atoms;
}

/// Independent oracle: multisets of {2,3} summing to n, by exhaustive
/// partition search.
std::set<std::multiset<std::uint64_t>> numerical_factorizations_oracle(std::uint64_t n) {
    std::set<std::multiset<std::uint64_t>> out;
    for (std::uint64_t twos = 0; 2 * twos <= n; ++twos) {
        std::uint64_t rest = n - 2 * twos;
        if (rest % 3 != 0) continue;
        std::multiset<std::uint64_t> ms;
        for (std::uint64_t i = 0; i < twos; ++i) ms.insert(2);
        for (std::uint64_t i = 0; i < rest / 3; ++i) ms.insert(3);
        out.insert(std::move(ms));
    }
    return out;
}

std::set<std::multiset<std::uint64_t>> multisets_as_values(const FactorizationSet& fs) {
    std::set<std::multiset<std::uint64_t>> out;
    for (const auto& m : fs.multisets) {
        std::multiset<std::uint64_t> ms;
        for (auto idx : m) ms.insert(fs.atoms[idx].value);
        out.insert(std::move(ms));
    }
    return out;
}

} // namespace

TEST_CASE("atoms of the Hilbert monoid up to 50") {
    MonoidSpec spec = hilbert_preset(50);
    auto atoms = atoms_up_to(spec, 50);
    std::set<std::uint64_t> got;
    for (const auto& a : atoms) got.insert(a.value);
    CHECK(got == hilbert_atoms_oracle(50));
    CHECK(got == std::set<std::uint64_t>{5, 9, 13, 17, 21, 29, 33, 37, 41, 49});
}

TEST_CASE("atoms of the numerical monoid <2,3> and an affine monoid") {
    MonoidSpec num = make_numerical_spec({2, 3});
    auto atoms = atoms_up_to(num, 20);
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].value == 2);
    CHECK(atoms[1].value == 3);

    MonoidSpec aff = make_affine_spec(2, {{0, 2}, {1, 1}, {2, 0}});
    auto affine_atoms = atoms_up_to(aff, 8);
    REQUIRE(affine_atoms.size() == 3);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& a : affine_atoms) got.insert(a.coords);
    CHECK(got == std::set<std::vector<std::int64_t>>{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("factorizations of 441 in H match the worked example") {
    MonoidSpec spec = hilbert_preset(500);
    auto fs = factorizations(spec, nat(441), 441);
    CHECK(multisets_as_values(fs) ==
          std::set<std::multiset<std::uint64_t>>{{21, 21}, {9, 49}});
    CHECK(lengths(spec, nat(441), 441) == std::set<std::uint64_t>{2});

    auto fs25 = factorizations(spec, nat(25), 25);
    CHECK(multisets_as_values(fs25) == std::set<std::multiset<std::uint64_t>>{{5, 5}});

    // every multiset recombines to the element
    for (const auto& m : fs.multisets) {
        MonoidElement prod = identity(spec);
        for (auto idx : m) prod = combine(spec, prod, fs.atoms[idx]);
        CHECK(prod == nat(441));
    }
}

TEST_CASE("factorizations in <2,3> against the partition oracle") {
    MonoidSpec spec = make_numerical_spec({2, 3});
    for (std::uint64_t n : {6, 7, 12, 17}) {
        auto fs = factorizations(spec, MonoidElement::numerical(n), n);
        CHECK(multisets_as_values(fs) == numerical_factorizations_oracle(n));
    }
    CHECK(lengths(spec, MonoidElement::numerical(6), 6) ==
          std::set<std::uint64_t>{2, 3});
}

TEST_CASE("atom_bound gates factorizations") {
    MonoidSpec spec = hilbert_preset(500);
    CHECK_THROWS_AS(factorizations(spec, nat(441), 20), bound_error);
    CHECK_NOTHROW(factorizations(spec, nat(441), 49));
}

TEST_CASE("lengths of an atom") {
    MonoidSpec spec = hilbert_preset(60);
    CHECK(lengths(spec, nat(21), 21) == std::set<std::uint64_t>{1});
}

TEST_CASE("prime certification in H") {
    MonoidSpec spec = hilbert_preset(10000);
    auto five = is_prime_bounded(spec, nat(5), 10000);
    CHECK(!five.refuted());
    CHECK(five.bound == 10000);

    auto nine = is_prime_bounded(spec, nat(9), 1000);
    REQUIRE(nine.refuted());
    // any returned witness must actually refute primality
    CHECK(divides(spec, nat(9), combine(spec, nine.witness->b, nine.witness->c)));
    CHECK(!divides(spec, nat(9), nine.witness->b));
    CHECK(!divides(spec, nat(9), nine.witness->c));

    auto tw = is_prime_bounded(spec, nat(21), 1000);
    REQUIRE(tw.refuted());
    CHECK(divides(spec, nat(21), combine(spec, tw.witness->b, tw.witness->c)));
    CHECK(!divides(spec, nat(21), tw.witness->b));
    CHECK(!divides(spec, nat(21), tw.witness->c));

    CHECK_THROWS_AS(is_prime_bounded(spec, nat(25), 100), spec_error);
}

TEST_CASE("strong atoms: exact verdicts for presentations") {
    MonoidSpec spec = hilbert_preset(500);
    CHECK(is_strong_atom(spec, nat(9), 6, 500).kind ==
          StrongAtomVerdict::Kind::ExactStrong);
    CHECK(is_strong_atom(spec, nat(5), 6, 500).kind ==
          StrongAtomVerdict::Kind::ExactStrong);
    CHECK(is_strong_atom(spec, nat(21), 6, 500).kind ==
          StrongAtomVerdict::Kind::ExactNotStrong);
    CHECK_THROWS_AS(is_strong_atom(spec, nat(25), 6, 500), spec_error);
}

TEST_CASE("strong atoms: bounded refutation in <2,3>") {
    MonoidSpec spec = make_numerical_spec({2, 3});
    auto verdict = is_strong_atom(spec, MonoidElement::numerical(2), 3, 10);
    REQUIRE(verdict.kind == StrongAtomVerdict::Kind::Refuted);
    CHECK(verdict.witness->power == 3);
    CHECK(verdict.witness->factorization_set.multisets.size() == 2);

    auto unref = is_strong_atom(spec, MonoidElement::numerical(2), 2, 10);
    CHECK(unref.kind == StrongAtomVerdict::Kind::Unrefuted);
    CHECK(unref.power_bound == 2);
}

TEST_CASE("UFM/HFM scans") {
    MonoidSpec hil = hilbert_preset(2000);
    auto hil_report = check_ufm_hfm_bounded(hil, 2000);
    REQUIRE(hil_report.ufm.refuted());
    CHECK(hil_report.ufm.witness->value == 441);
    CHECK(!hil_report.hfm.refuted());

    MonoidSpec nats = naturals_preset(2000);
    auto nat_report = check_ufm_hfm_bounded(nats, 2000);
    CHECK(!nat_report.ufm.refuted());
    CHECK(!nat_report.hfm.refuted());

    MonoidSpec num = make_numerical_spec({2, 3});
    auto num_report = check_ufm_hfm_bounded(num, 100);
    REQUIRE(num_report.ufm.refuted());
    REQUIRE(num_report.hfm.refuted());
    CHECK(num_report.ufm.witness->value == 6);
    CHECK(num_report.hfm.witness->value == 6);
}

TEST_CASE("trivial class group: every element factors uniquely") {
    auto check_all_unique = [](const MonoidSpec& spec, std::uint64_t bound) {
        for (const auto& x : enumerate_elements(spec, bound)) {
            if (x.is_identity()) continue;
            CHECK(factorizations(spec, x, bound).multisets.size() == 1);
        }
    };
    check_all_unique(free_preset(3), 6);
    check_all_unique(naturals_preset(60), 60);
}

TEST_CASE("rank-3 regression: strong atoms that are not prime") {
    auto affine =
        make_affine_spec(3, {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}});
    MonoidSpec spec = affine;
    auto atoms = atoms_up_to(spec, 2);
    REQUIRE(atoms.size() == 4);
    for (const auto& a : atoms) {
        CHECK(is_strong_atom(spec, a, 6, 64).kind ==
              StrongAtomVerdict::Kind::ExactStrong);
        auto prime = is_prime_bounded(spec, a, 2);
        REQUIRE(prime.refuted());
        auto bc = combine(spec, prime.witness->b, prime.witness->c);
        CHECK(divides(spec, a, bc));
        CHECK(!divides(spec, a, prime.witness->b));
        CHECK(!divides(spec, a, prime.witness->c));
    }
}

TEST_CASE("exact strong verdicts never contradict prime certificates") {
    MonoidSpec spec = hilbert_preset(200);
    // atoms that are not strong cannot be prime: the searches must find it
    for (std::uint64_t a : {21, 33, 57, 77}) {
        CHECK(is_strong_atom(spec, nat(a), 6, 200).kind ==
              StrongAtomVerdict::Kind::ExactNotStrong);
        CHECK(is_prime_bounded(spec, nat(a), 3000).refuted());
    }
}

TEST_CASE("default power bound follows the class group exponent") {
    CHECK(default_power_bound(MonoidSpec(hilbert_preset(20))) == 2);
    CHECK(default_power_bound(MonoidSpec(divisor_theory_preset(
              {6}, {{1, {1}}}))) == 6);
    CHECK(default_power_bound(MonoidSpec(make_numerical_spec({2, 3}))) == 6);
}
