#include "krull/zeta.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "krull/primes.hpp"

namespace krull {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Kahan-compensated accumulator.
struct Kahan {
    double sum = 0, comp = 0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void require_gt_one(const ScaleValue& v, const std::string& what) {
    bool ok = v.exact ? (*v.exact > 1) : (v.approx > 1);
    if (!ok)
        throw spec_error("scale value on " + what +
                         " violates sigma(a) > 1 on strong atoms");
}

} // namespace

const ScaleValue& Scale::at(std::int64_t divisor_id) const {
    auto it = values.find(divisor_id);
    if (it == values.end())
        throw spec_error("scale has no value on divisor " + std::to_string(divisor_id));
    return it->second;
}

Scale make_scale(const KrullPresentation& pres,
                 const std::map<std::int64_t, ScaleValue>& f, std::string name) {
    Scale scale;
    scale.name = std::move(name);
    for (const auto& d : pres.divisors) {
        auto it = f.find(d.id);
        if (it == f.end())
            throw spec_error("scale is not total: no value for divisor " + d.display);
        require_gt_one(it->second, d.display);
        scale.values.emplace(d.id, it->second);
    }
    return scale;
}

Scale power_scale(const KrullPresentation& pres, double s) {
    if (!pres.integer_family())
        throw spec_error("power scale needs an integer family (atoms have no value)");
    if (s <= 0) throw spec_error("power scale exponent must be positive");
    bool integral = s == std::floor(s) && s < 64;
    std::map<std::int64_t, ScaleValue> f;
    for (const auto& atom : strong_atoms(pres)) {
        ScaleValue v;
        if (integral) {
            v = ScaleValue::from_rat(
                rat_pow(Rat(static_cast<unsigned long>(*atom.value)),
                        static_cast<std::uint64_t>(s)));
        } else {
            v = ScaleValue::from_double(std::pow(static_cast<double>(*atom.value), s));
        }
        f.emplace(atom.divisor_id, v);
    }
    char name[32];
    std::snprintf(name, sizeof(name), "power:%g", s);
    return make_scale(pres, f, name);
}

Scale decay_rate_scale(const KrullPresentation& pres, const Rat& c) {
    if (c <= 1) throw spec_error("decay scale constant must exceed 1");
    std::map<std::int64_t, ScaleValue> f;
    for (const auto& d : pres.divisors) f.emplace(d.id, ScaleValue::from_rat(c));
    return make_scale(pres, f, "decay:" + rat_frac_str(c));
}

Scale wallis_scale(const KrullPresentation& pres) {
    if (pres.family != PresetFamily::Naturals)
        throw spec_error("the Wallis scale is defined on the naturals preset");
    std::map<std::int64_t, ScaleValue> f;
    std::uint64_t k = 0;
    for (const auto& d : pres.divisors) { // divisors are the primes, ascending
        ++k;
        f.emplace(d.id, ScaleValue::from_rat(Rat(static_cast<unsigned long>(4 * k * k))));
    }
    return make_scale(pres, f, "wallis");
}

Scale weighted_scale(const KrullPresentation& pres,
                     const std::map<std::int64_t, std::int64_t>& f) {
    if (!pres.integer_family())
        throw spec_error("weighted scale needs an integer family");
    std::map<std::int64_t, ScaleValue> values;
    for (const auto& d : pres.divisors) {
        auto it = f.find(d.id);
        if (it == f.end())
            throw spec_error("weight function is not total: missing prime " + d.display);
        if (it->second < 1)
            throw spec_error("weights must be >= 1 so that sigma exceeds 1 on atoms");
        // base value on the strong atom p^k is p^(f(p) * k)
        Rat base = rat_pow(Rat(d.id), static_cast<std::uint64_t>(it->second * d.order));
        values.emplace(d.id, ScaleValue::from_rat(base));
    }
    return make_scale(pres, values, "weighted");
}

double scale_eval(const KrullPresentation& pres, const Scale& scale,
                  const MonoidElement& x) {
    if (x.is_identity()) return 1.0;
    auto [lambdas, delta] = lambda_delta(pres, x);
    double out = 1.0;
    for (const auto& [atom, lam] : lambdas)
        out *= std::pow(scale.at(atom.divisor_id).approx, to_double(lam));
    return out;
}

std::optional<Rat> scale_eval_exact(const KrullPresentation& pres, const Scale& scale,
                                    const MonoidElement& x) {
    if (x.is_identity()) return Rat(1);
    auto [lambdas, delta] = lambda_delta(pres, x);
    Rat out = 1;
    for (const auto& [atom, lam] : lambdas) {
        const ScaleValue& v = scale.at(atom.divisor_id);
        if (!v.exact || lam.get_den() != 1) return std::nullopt;
        out *= rat_pow(*v.exact, lam.get_num().get_ui());
    }
    return out;
}

std::string zeta_to_json(const ZetaEstimate& e) {
    nlohmann::json j;
    j["partial_sum"] = e.partial_sum;
    j["product"] = e.truncated_product;
    j["lower"] = e.lower;
    j["upper"] = e.upper ? nlohmann::json(*e.upper) : nlohmann::json(nullptr);
    j["terms"] = e.terms;
    j["atoms"] = e.atoms;
    j["assumed_tail"] =
        e.assumed_tail ? nlohmann::json(*e.assumed_tail) : nlohmann::json(nullptr);
    return j.dump();
}

std::string zeta_csv_header() {
    return "partial_sum,product,lower,upper,terms,atoms,assumed_tail";
}

std::string zeta_to_csv(const ZetaEstimate& e) {
    std::string row = format_double(e.partial_sum);
    row += "," + format_double(e.truncated_product);
    row += "," + format_double(e.lower);
    row += ",";
    if (e.upper) row += format_double(*e.upper);
    row += "," + std::to_string(e.terms);
    row += "," + std::to_string(e.atoms);
    row += ",";
    if (e.assumed_tail) row += format_double(*e.assumed_tail);
    return row;
}

ClosureEnumerator::ClosureEnumerator(std::vector<double> atom_sigmas)
    : sigmas_(std::move(atom_sigmas)) {
    for (std::size_t i = 0; i < sigmas_.size(); ++i) {
        if (!(sigmas_[i] > 1))
            throw spec_error("closure enumeration needs sigma(a) > 1 on every atom");
        if (i > 0 && sigmas_[i] < sigmas_[i - 1])
            throw spec_error("closure enumeration needs ascending sigma values");
    }
}

ClosureEnumerator::Term ClosureEnumerator::next() {
    if (!identity_emitted_) {
        identity_emitted_ = true;
        if (!sigmas_.empty())
            heap_.push(Node{sigmas_[0], 1.0, {{0, 1}}, 0});
        return Term{1.0, {}};
    }
    if (heap_.empty()) throw bound_error("closure enumeration exhausted");
    Node node = heap_.top();
    heap_.pop();

    // first child: bump the exponent of the last atom
    {
        Node child;
        child.parent_sigma = node.sigma;
        child.last = node.last;
        child.exps = node.exps;
        child.exps.back().second += 1;
        child.sigma = node.sigma * sigmas_[node.last];
        heap_.push(std::move(child));
    }
    // next sibling: swap the final atom for the next one
    if (node.last + 1 < sigmas_.size()) {
        Node sib;
        sib.parent_sigma = node.parent_sigma;
        sib.last = node.last + 1;
        sib.exps = node.exps;
        if (sib.exps.back().second == 1) sib.exps.pop_back();
        else sib.exps.back().second -= 1;
        sib.exps.emplace_back(sib.last, 1);
        sib.sigma = node.parent_sigma * sigmas_[sib.last];
        heap_.push(std::move(sib));
    }
    return Term{node.sigma, std::move(node.exps)};
}

namespace {

/// (sigma, divisor id) per presented strong atom, sorted ascending.
std::vector<std::pair<double, std::int64_t>>
sorted_atom_sigmas(const KrullPresentation& pres, const Scale& scale) {
    std::vector<std::pair<double, std::int64_t>> out;
    for (const auto& d : pres.divisors)
        out.emplace_back(scale.at(d.id).approx, d.id);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

double euler_product_truncated(const std::vector<double>& atom_sigmas) {
    long double prod = 1;
    for (double s : atom_sigmas) {
        if (!(s > 1)) throw spec_error("Euler product needs sigma(a) > 1");
        prod *= 1.0L / (1.0L - 1.0L / static_cast<long double>(s));
    }
    return static_cast<double>(prod);
}

Rat euler_product_exact(const std::vector<Rat>& atom_sigmas) {
    Rat prod = 1;
    for (const Rat& s : atom_sigmas) {
        if (!(s > 1)) throw spec_error("Euler product needs sigma(a) > 1");
        prod *= Rat(1) / (Rat(1) - Rat(1) / s);
    }
    return prod;
}

Rat closure_sum_exact(const std::vector<Rat>& atom_sigmas) {
    // geometric-series limit per atom: sum_{n>=0} q^n = 1/(1-q), q = 1/sigma
    Rat sum = 1;
    for (const Rat& s : atom_sigmas) {
        if (!(s > 1)) throw spec_error("closure sum needs sigma(a) > 1");
        Rat q = Rat(1) / s;
        sum *= Rat(1) / (Rat(1) - q);
    }
    return sum;
}

Rat closure_box_sum_enumerated(const std::vector<Rat>& atom_sigmas, std::uint32_t n) {
    Rat total = 0;
    std::vector<std::uint32_t> e(atom_sigmas.size(), 0);
    while (true) {
        Rat term = 1;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term /= rat_pow(atom_sigmas[i], e[i]);
        total += term;
        std::size_t i = 0;
        while (i < e.size() && e[i] == n) e[i++] = 0;
        if (i == e.size()) break;
        ++e[i];
    }
    return total;
}

Rat closure_box_sum_closed_form(const std::vector<Rat>& atom_sigmas, std::uint32_t n) {
    Rat prod = 1;
    for (const Rat& s : atom_sigmas) {
        Rat q = Rat(1) / s;
        prod *= (Rat(1) - rat_pow(q, n + 1)) / (Rat(1) - q);
    }
    return prod;
}

UpperBound zeta_upper_bound(double truncated_product, double tail_bound,
                            bool omitted_certified) {
    if (tail_bound < 0) throw spec_error("tail bound must be nonnegative");
    UpperBound b;
    b.value = truncated_product * std::exp(2.0 * tail_bound);
    b.conditional = !omitted_certified;
    return b;
}

ZetaEstimate zeta_partial_sum(const KrullPresentation& pres, const Scale& scale,
                              std::uint64_t term_budget,
                              std::optional<double> tail_bound) {
    if (term_budget < 1) throw spec_error("term budget must be >= 1");
    auto atoms = sorted_atom_sigmas(pres, scale);
    std::vector<double> sigmas;
    sigmas.reserve(atoms.size());
    for (auto& [s, id] : atoms) sigmas.push_back(s);

    ClosureEnumerator en(sigmas);
    Kahan acc;
    std::uint64_t emitted = 0;
    for (; emitted < term_budget; ++emitted) {
        if (emitted > 0 && atoms.empty()) break;
        acc.add(1.0 / en.next().sigma);
    }

    ZetaEstimate est;
    est.partial_sum = acc.sum;
    est.terms = emitted;
    est.atoms = atoms.size();
    // the compensated error is far below this; fold it into the bracket
    est.lower = acc.sum * (1.0 - 64 * kEps);
    est.truncated_product = euler_product_truncated(sigmas);
    if (tail_bound) {
        est.assumed_tail = *tail_bound;
        // a complete (untruncated) presentation omits nothing
        auto ub = zeta_upper_bound(est.truncated_product, *tail_bound,
                                   !pres.bound.has_value());
        est.upper = ub.value * (1.0 + 64 * kEps);
        est.upper_conditional = ub.conditional;
    }
    return est;
}

EulerIdentityReport check_euler_identity(const KrullPresentation& pres,
                                         const Scale& scale, std::uint64_t budget,
                                         double tolerance,
                                         std::optional<double> tail_bound,
                                         std::uint64_t monoid_bound) {
    if (budget < 4) throw spec_error("budget must be >= 4");
    EulerIdentityReport report;
    report.tolerance = tolerance;

    auto atoms = sorted_atom_sigmas(pres, scale);
    std::vector<double> sigmas;
    for (auto& [s, id] : atoms) sigmas.push_back(s);
    double product = euler_product_truncated(sigmas);

    std::vector<std::uint64_t> checkpoints{budget / 4, budget / 2, budget};
    ClosureEnumerator en(sigmas);
    Kahan acc;
    std::size_t next_cp = 0;
    for (std::uint64_t t = 1; t <= budget; ++t) {
        acc.add(1.0 / en.next().sigma);
        while (next_cp < checkpoints.size() && t == checkpoints[next_cp]) {
            report.gaps.push_back(std::abs(acc.sum - product));
            ++next_cp;
        }
    }
    report.converged = report.gaps.back() <= tolerance;
    for (std::size_t i = 1; i < report.gaps.size(); ++i)
        report.converged = report.converged && report.gaps[i] <= report.gaps[i - 1];

    report.estimate.partial_sum = acc.sum;
    report.estimate.lower = acc.sum * (1.0 - 64 * kEps);
    report.estimate.truncated_product = product;
    report.estimate.terms = budget;
    report.estimate.atoms = atoms.size();
    if (tail_bound) {
        report.estimate.assumed_tail = *tail_bound;
        auto ub = zeta_upper_bound(product, *tail_bound, !pres.bound.has_value());
        report.estimate.upper = ub.value * (1.0 + 64 * kEps);
        report.estimate.upper_conditional = ub.conditional;
    }

    // classical-formula side: full-monoid sum against the product over the
    // primes of M (the class-zero divisors)
    MonoidSpec spec = pres;
    Kahan full;
    std::uint64_t terms = 0;
    for (const auto& x : enumerate_elements(spec, monoid_bound)) {
        if (!to_exponents_opt(pres, x)) continue; // outside the divisor truncation
        full.add(1.0 / scale_eval(pres, scale, x));
        ++terms;
    }
    report.full_monoid_sum = full.sum;
    report.full_monoid_terms = terms;

    long double prime_prod = 1;
    std::uint64_t primes = 0;
    bool all_primes = true;
    for (const auto& d : pres.divisors) {
        if (pres.group.is_zero(d.cls)) {
            ++primes;
            prime_prod *= 1.0L / (1.0L - 1.0L / scale.at(d.id).approx);
        } else {
            all_primes = false;
        }
    }
    report.prime_product = static_cast<double>(prime_prod);
    report.prime_count = primes;
    report.ufm_gap = report.full_monoid_sum - report.prime_product;
    report.primes_are_all_strong_atoms = all_primes;
    return report;
}

InfinitudeReport infinitude_report(const KrullPresentation& pres, const Scale& scale,
                                   std::optional<Rat> c, std::uint64_t n_bound) {
    InfinitudeReport report;
    report.n_bound = n_bound;
    report.c = c;

    if (pres.family == PresetFamily::Naturals && c) {
        if (*c <= 1) throw spec_error("the growth constant c must exceed 1");
        if (n_bound > 200'000'000)
            throw bound_error("Omega sieve bound too large for desk scale");
        auto omega = omega_sieve(static_cast<std::uint32_t>(n_bound));
        std::uint8_t max_k = 0;
        for (auto w : omega) max_k = std::max(max_k, w);

        // exact comparison n >= c^k as n * den^k >= num^k
        std::vector<Int> num_pow(max_k + 1), den_pow(max_k + 1);
        for (std::uint32_t k = 0; k <= max_k; ++k) {
            num_pow[k] = int_pow(c->get_num(), k);
            den_pow[k] = int_pow(c->get_den(), k);
        }
        std::vector<double> r_pow(max_k + 1);
        double r = to_double(Rat(1) / *c);
        r_pow[0] = 1;
        for (std::uint32_t k = 1; k <= max_k; ++k) r_pow[k] = r_pow[k - 1] * r;

        std::uint64_t violations = 0;
        Kahan anti, harmonic;
        anti.add(1.0); // n = 1, Omega = 0
        for (std::uint64_t n = 2; n <= n_bound; ++n) {
            std::uint8_t k = omega[n];
            if (Int(static_cast<unsigned long>(n)) * den_pow[k] < num_pow[k])
                ++violations;
            anti.add(r_pow[k]);
            harmonic.add(1.0 / static_cast<double>(n));
        }
        report.growth_violations = violations;
        report.anti_geometric_sum = anti.sum;
        report.harmonic_sum = harmonic.sum;
    }

    // partial sums of 1/sigma(a) over presented strong atoms, grouped by k(p)
    std::map<std::int64_t, InfinitudeSeries> groups;
    for (const auto& d : pres.divisors) {
        auto& g = groups[d.order];
        g.label = "sum 1/sigma(a) over atoms with k(p) = " + std::to_string(d.order);
        g.count += 1;
        g.sum += 1.0 / scale.at(d.id).approx;
    }
    for (auto& [k, g] : groups) report.atom_series.push_back(g);
    return report;
}

} // namespace krull
