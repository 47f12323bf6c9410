#include "krull/numberfield.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "krull/primes.hpp"

namespace krull {

namespace {

bool is_square_u64(std::uint64_t n, std::uint64_t* root = nullptr) {
    if (n == 0) {
        if (root) *root = 0;
        return true;
    }
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (root) *root = r;
    return r * r == n;
}

bool d_is_one_mod_four(std::int64_t d) { return ((d % 4) + 4) % 4 == 1; }

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

int kronecker_symbol(std::int64_t a, std::int64_t n) {
    if (n < 1) throw spec_error("kronecker_symbol expects n >= 1");
    if (n == 1) return 1;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    // pull the 2-part out of n: (a/2) = 0, +-1 by a mod 8
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        std::int64_t am = mod_pos(a, 8);
        if (am == 3 || am == 5) result = -result;
    }
    a = mod_pos(a, n);
    while (a != 0) {
        v = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++v;
        }
        if (v % 2 == 1) {
            std::int64_t nm = n % 8;
            if (nm == 3 || nm == 5) result = -result;
        }
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        std::int64_t t = a;
        a = n % a;
        n = t;
    }
    return n == 1 ? result : 0;
}

bool norm_form_represents(const QuadraticField& field, std::uint64_t n) {
    std::uint64_t ad = static_cast<std::uint64_t>(-field.d);
    if (!d_is_one_mod_four(field.d)) {
        // x^2 + |d| y^2 = n
        for (std::uint64_t y = 0; ad * y * y <= n; ++y)
            if (is_square_u64(n - ad * y * y)) return true;
        return false;
    }
    // x^2 + x y + ((1 - d)/4) y^2 = n: solve the quadratic in x exactly
    std::uint64_t c = static_cast<std::uint64_t>((1 - field.d) / 4);
    // 4n = (2x + y)^2 + |d| y^2
    (void)c;
    for (std::uint64_t y = 0; ad * y * y <= 4 * n; ++y) {
        std::uint64_t rest = 4 * n - ad * y * y;
        std::uint64_t s;
        if (!is_square_u64(rest, &s)) continue;
        // need 2x + y = +-s with x integral
        if ((s % 2) == (y % 2)) return true;
    }
    return false;
}

SplitType splitting(const QuadraticField& field, std::uint64_t p) {
    if (!is_prime_u64(p)) throw spec_error(std::to_string(p) + " is not prime");
    std::int64_t ip = static_cast<std::int64_t>(p);
    if (mod_pos(field.D, ip) == 0) return SplitType::Ramified;
    int chi = kronecker_symbol(field.D, ip);
    return chi == 1 ? SplitType::Split : SplitType::Inert;
}

bool is_principal(const QuadraticField& field, const PrimeIdeal& ideal) {
    if (field.class_number > 2)
        throw spec_error("principality search supports class number <= 2 only");
    if (ideal.type == SplitType::Inert) return true;
    return norm_form_represents(field, ideal.p);
}

std::vector<PrimeIdeal> prime_ideals_up_to_norm(const QuadraticField& field,
                                                std::uint64_t X) {
    std::vector<PrimeIdeal> out;
    if (X < 2) return out;
    for (auto p : primes_up_to(X)) {
        SplitType type = splitting(field, p);
        if (type == SplitType::Inert) {
            if (p > X / p) continue; // norm p^2 > X
            PrimeIdeal ideal{p, type, p * p, true, 0, "P" + std::to_string(p)};
            out.push_back(std::move(ideal));
            continue;
        }
        PrimeIdeal ideal{p, type, p, false, 0, "P" + std::to_string(p)};
        ideal.principal = is_principal(field, ideal);
        if (type == SplitType::Split) {
            PrimeIdeal conj = ideal;
            conj.conjugate_id = 1;
            conj.label += "'";
            out.push_back(ideal);
            out.push_back(std::move(conj));
        } else {
            out.push_back(std::move(ideal));
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return std::tie(a.norm, a.p, a.conjugate_id) <
               std::tie(b.norm, b.p, b.conjugate_id);
    });
    return out;
}

std::uint64_t ideal_count_oracle(const QuadraticField& field, std::uint64_t n) {
    if (n < 1) throw spec_error("ideal counts are defined for n >= 1");
    std::int64_t total = 0;
    for (std::uint64_t m = 1; m * m <= n; ++m) {
        if (n % m != 0) continue;
        total += kronecker_symbol(field.D, static_cast<std::int64_t>(m));
        std::uint64_t m2 = n / m;
        if (m2 != m)
            total += kronecker_symbol(field.D, static_cast<std::int64_t>(m2));
    }
    if (total < 0) throw error("negative ideal count from the character sum");
    return static_cast<std::uint64_t>(total);
}

std::vector<std::uint64_t> ideal_counts_oracle_up_to(const QuadraticField& field,
                                                     std::uint64_t X) {
    std::vector<std::int64_t> acc(X + 1, 0);
    for (std::uint64_t m = 1; m <= X; ++m) {
        int chi = kronecker_symbol(field.D, static_cast<std::int64_t>(m));
        if (chi == 0) continue;
        for (std::uint64_t n = m; n <= X; n += m) acc[n] += chi;
    }
    std::vector<std::uint64_t> out(X + 1, 0);
    for (std::uint64_t n = 1; n <= X; ++n) {
        if (acc[n] < 0) throw error("negative ideal count from the character sum");
        out[n] = static_cast<std::uint64_t>(acc[n]);
    }
    return out;
}

std::vector<std::uint64_t> ideal_counts_by_enumeration(const QuadraticField& field,
                                                       std::uint64_t X) {
    std::vector<std::uint64_t> dp(X + 1, 0);
    if (X >= 1) dp[1] = 1;
    for (const auto& ideal : prime_ideals_up_to_norm(field, X)) {
        std::uint64_t q = ideal.norm;
        for (std::uint64_t n = q; n <= X; n += q) dp[n] += dp[n / q];
    }
    return dp;
}

ZetaEstimate dedekind_zeta(const QuadraticField& field, double s, std::uint64_t X,
                           std::optional<double> tail_bound) {
    if (!(s > 1)) throw spec_error("dedekind zeta needs a real scale exponent s > 1");
    if (X < 2) throw spec_error("dedekind zeta needs X >= 2");

    auto counts = ideal_counts_oracle_up_to(field, X);
    double sum = 0, comp = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
        if (counts[n] == 0) continue;
        double term = static_cast<double>(counts[n]) /
                      std::pow(static_cast<double>(n), s);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    auto ideals = prime_ideals_up_to_norm(field, X);
    long double prod = 1;
    for (const auto& ideal : ideals)
        prod *= 1.0L / (1.0L - std::pow(static_cast<long double>(ideal.norm),
                                        -static_cast<long double>(s)));

    ZetaEstimate est;
    est.partial_sum = sum;
    est.lower = sum * (1.0 - 1e-13);
    est.truncated_product = static_cast<double>(prod);
    est.terms = X;
    est.atoms = ideals.size();
    if (tail_bound) {
        est.assumed_tail = *tail_bound;
        auto ub = zeta_upper_bound(est.truncated_product, *tail_bound, false);
        est.upper = ub.value;
        est.upper_conditional = ub.conditional;
    }
    return est;
}

std::vector<NFStrongAtom> principal_monoid_strong_atoms(const QuadraticField& field,
                                                        std::uint64_t X) {
    if (field.class_number > 2)
        throw spec_error("strong atoms implemented for class number <= 2 only");
    std::vector<NFStrongAtom> out;
    for (const auto& ideal : prime_ideals_up_to_norm(field, X)) {
        NFStrongAtom atom;
        atom.ideal = ideal;
        if (ideal.principal) {
            atom.k = 1;
            atom.norm = ideal.norm;
            atom.label = ideal.label;
        } else {
            atom.k = 2;
            if (ideal.norm > X / ideal.norm) continue; // norm^2 > X
            atom.norm = ideal.norm * ideal.norm;
            atom.label = ideal.label + "^2";
        }
        out.push_back(std::move(atom));
    }
    std::sort(out.begin(), out.end(), [](const NFStrongAtom& a, const NFStrongAtom& b) {
        return std::tie(a.norm, a.ideal.p, a.ideal.conjugate_id) <
               std::tie(b.norm, b.ideal.p, b.ideal.conjugate_id);
    });
    return out;
}

std::int64_t ideal_divisor_id(const PrimeIdeal& ideal) {
    return static_cast<std::int64_t>(2 * ideal.p) + ideal.conjugate_id;
}

KrullPresentation presentation_from_splitting(const QuadraticField& field,
                                              std::uint64_t X) {
    KrullPresentation pres;
    pres.family = PresetFamily::DivisorTheory;
    pres.group = ClassGroup({field.class_number});
    pres.bound = X;
    for (const auto& ideal : prime_ideals_up_to_norm(field, X)) {
        PrimeDivisor d;
        d.id = ideal_divisor_id(ideal);
        d.display = ideal.label;
        d.cls = GroupElem{ideal.principal ? 0 : 1};
        d.order = pres.group.order_of(d.cls);
        pres.divisors.push_back(std::move(d));
    }
    std::sort(pres.divisors.begin(), pres.divisors.end(),
              [](const PrimeDivisor& a, const PrimeDivisor& b) { return a.id < b.id; });
    return pres;
}

Scale norm_scale(const QuadraticField& field, const KrullPresentation& pres,
                 std::uint64_t s) {
    if (s < 2) throw spec_error("the norm scale needs s > 1");
    std::map<std::int64_t, std::uint64_t> norm_by_id;
    for (const auto& ideal : prime_ideals_up_to_norm(field, pres.bound.value_or(0)))
        norm_by_id[ideal_divisor_id(ideal)] = ideal.norm;

    std::map<std::int64_t, ScaleValue> f;
    for (const auto& d : pres.divisors) {
        auto it = norm_by_id.find(d.id);
        if (it == norm_by_id.end())
            throw spec_error("presentation divisor " + d.display +
                             " is not an ideal of this field");
        // the strong atom over P maps to the prime ideal P itself, so the
        // norm scale weights it by N(P)^s (not N(P^k)^s); the closure of the
        // strong atoms then sums 1/N(I)^s over every ideal I exactly once
        Rat base = rat_pow(Rat(static_cast<unsigned long>(it->second)), s);
        f.emplace(d.id, ScaleValue::from_rat(base));
    }
    return make_scale(pres, f, "norm:" + std::to_string(s));
}

namespace {

/// Smaller square root of d modulo p (p odd and split, so a root exists).
std::uint64_t sqrt_mod(std::int64_t d, std::uint64_t p) {
    std::int64_t target = mod_pos(d, static_cast<std::int64_t>(p));
    for (std::uint64_t r = 0; r <= p / 2; ++r)
        if (static_cast<std::int64_t>(r * r % p) == target) return r;
    throw error("no square root mod p for a split prime");
}

} // namespace

DecayDecomposition decay_in_OK(const QuadraticField& field, std::int64_t u,
                               std::int64_t v) {
    bool one_mod_four = d_is_one_mod_four(field.d);
    std::uint64_t norm;
    {
        std::int64_t n;
        if (!one_mod_four)
            n = u * u + (-field.d) * v * v;
        else
            n = u * u + u * v + ((1 - field.d) / 4) * v * v;
        if (n == 0) throw spec_error("0 has no decay decomposition");
        if (n == 1) throw spec_error("units have no decay decomposition");
        norm = static_cast<std::uint64_t>(n);
    }

    // rewrite x in the 1, sqrt(d) basis, times 2 when omega = (1+sqrt(d))/2
    std::int64_t a = one_mod_four ? 2 * u + v : u;
    std::int64_t b = v;

    std::map<std::int64_t, std::uint64_t> exps;
    std::vector<PrimeIdeal> support;
    for (auto& [p, e] : factor_trial(norm, field.factor_limit)) {
        SplitType type = splitting(field, p);
        auto ip = static_cast<std::int64_t>(p);
        if (type == SplitType::Ramified || type == SplitType::Inert) {
            PrimeIdeal ideal{p, type, type == SplitType::Inert ? p * p : p, true, 0,
                             "P" + std::to_string(p)};
            std::uint64_t f = e;
            if (type == SplitType::Inert) {
                if (e % 2 != 0) throw error("odd inert exponent in a norm");
                f = e / 2;
            } else {
                ideal.principal = is_principal(field, ideal);
            }
            support.push_back(ideal);
            exps[ideal_divisor_id(ideal)] = f;
            continue;
        }
        // split: strip the (p)-content, then one conjugate takes the rest
        std::uint64_t t = 0;
        std::uint32_t rem = e;
        bool first;
        if (p == 2) {
            // d = 1 (mod 8) here; omega has residues 0 and 1 above 2, and
            // conjugate 0 pairs with omega = 0
            std::int64_t uu = u, vv = v;
            while (uu % 2 == 0 && vv % 2 == 0) {
                uu /= 2;
                vv /= 2;
                ++t;
                rem -= 2;
            }
            first = mod_pos(uu, 2) == 0;
            if (rem > 0 && !first && mod_pos(uu + vv, 2) != 0)
                throw error("split prime divides the norm but no conjugate divides x");
        } else {
            std::uint64_t root = sqrt_mod(field.d, p);
            std::int64_t aa = a, bb = b;
            while (aa % ip == 0 && bb % ip == 0) {
                aa /= ip;
                bb /= ip;
                ++t;
                rem -= 2;
            }
            first = mod_pos(aa + bb * static_cast<std::int64_t>(root), ip) == 0;
            if (rem > 0 && !first &&
                mod_pos(aa + bb * static_cast<std::int64_t>(p - root), ip) != 0)
                throw error("split prime divides the norm but no conjugate divides x");
        }
        PrimeIdeal p0{p, type, p, false, 0, "P" + std::to_string(p)};
        p0.principal = is_principal(field, p0);
        PrimeIdeal p1 = p0;
        p1.conjugate_id = 1;
        p1.label += "'";
        std::uint64_t f0 = t + (first ? rem : 0);
        std::uint64_t f1 = t + (first ? 0 : rem);
        if (f0 > 0) {
            support.push_back(p0);
            exps[ideal_divisor_id(p0)] = f0;
        }
        if (f1 > 0) {
            support.push_back(p1);
            exps[ideal_divisor_id(p1)] = f1;
        }
    }

    // presentation on the support ideals only
    KrullPresentation pres;
    pres.family = PresetFamily::DivisorTheory;
    pres.group = ClassGroup({field.class_number});
    for (const auto& ideal : support) {
        PrimeDivisor div;
        div.id = ideal_divisor_id(ideal);
        div.display = ideal.label;
        div.cls = GroupElem{ideal.principal ? 0 : 1};
        div.order = pres.group.order_of(div.cls);
        pres.divisors.push_back(std::move(div));
    }
    std::sort(pres.divisors.begin(), pres.divisors.end(),
              [](const PrimeDivisor& x, const PrimeDivisor& y) { return x.id < y.id; });
    return decay(pres, MonoidElement::exponent_vector(std::move(exps)));
}

QuadraticField make_field(std::int64_t d, int class_number, std::uint64_t norm_bound) {
    if (d >= 0) throw spec_error("only imaginary quadratic fields (d < 0) are supported");
    if (class_number != 1 && class_number != 2)
        throw spec_error("class number must be 1 or 2");
    // squarefree check
    for (std::int64_t q = 2; q * q <= -d; ++q)
        if ((-d) % (q * q) == 0) throw spec_error("d must be squarefree");

    QuadraticField field;
    field.d = d;
    field.D = d_is_one_mod_four(d) ? d : 4 * d;
    field.class_number = class_number;
    field.norm_bound = norm_bound;

    // probe the configured class number against the norm form
    bool found_non_represented = false;
    for (auto p : primes_up_to(200)) {
        if (splitting(field, p) != SplitType::Split) continue;
        bool rep = norm_form_represents(field, p);
        if (!rep) found_non_represented = true;
        if (class_number == 1 && !rep)
            throw spec_error("class number 1 rejected: split prime " +
                             std::to_string(p) + " is not represented by the norm form");
    }
    if (class_number == 2 && !found_non_represented)
        throw spec_error("class number 2 rejected: every split prime <= 200 is "
                         "represented by the norm form");
    field.validated = (d == -1 || d == -2 || d == -5 || d == -6);
    return field;
}

QuadraticField load_field_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw spec_error(std::string("field config is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("family", "") != "quadratic_field")
        throw spec_error("field config must have \"family\": \"quadratic_field\"");
    auto d = j.at("d").get<std::int64_t>();
    auto h = j.at("class_number").get<int>();
    std::uint64_t norm_bound = j.value("norm_bound", 10000);
    auto field = make_field(d, h, norm_bound);
    if (j.contains("factor_limit"))
        field.factor_limit = j["factor_limit"].get<std::uint64_t>();
    return field;
}

std::string field_to_json(const QuadraticField& field) {
    nlohmann::json j;
    j["family"] = "quadratic_field";
    j["d"] = field.d;
    j["class_number"] = field.class_number;
    j["norm_bound"] = field.norm_bound;
    j["validated"] = field.validated;
    return j.dump();
}

} // namespace krull
