#ifndef KRULL_ZETA_HPP
#define KRULL_ZETA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "krull/decay.hpp"
#include "krull/monoid.hpp"
#include "krull/rational.hpp"

namespace krull {

/// Base value f(a) > 1 on one strong atom. `exact` is kept whenever the
/// value is rational so closed-form identities can be checked exactly.
struct ScaleValue {
    double approx = 0;
    std::optional<Rat> exact;

    static ScaleValue from_rat(const Rat& q) { return {to_double(q), q}; }
    static ScaleValue from_double(double v) { return {v, std::nullopt}; }
};

/// Scale on a presentation: values on the strong atoms, keyed by divisor id,
/// extended to the whole monoid by sigma(x) = prod f(a)^lambda_a(x).
struct Scale {
    std::string name = "custom";
    std::map<std::int64_t, ScaleValue> values;

    const ScaleValue& at(std::int64_t divisor_id) const;
};

/// Validates f(a) > 1 on every presented strong atom; f must be total.
Scale make_scale(const KrullPresentation& pres,
                 const std::map<std::int64_t, ScaleValue>& f,
                 std::string name = "custom");

/// f(a) = value(a)^s on integer families; exact when s is a whole number.
Scale power_scale(const KrullPresentation& pres, double s);

/// Constant base value c > 1: sigma(x) = c^delta(x).
Scale decay_rate_scale(const KrullPresentation& pres, const Rat& c);

/// On the naturals preset: p_k -> 4k^2 (k-th prime, 1-based).
Scale wallis_scale(const KrullPresentation& pres);

/// sigma_f(n) = prod p^{f(p) n(p)}: base value p^{f(p)} per prime divisor.
Scale weighted_scale(const KrullPresentation& pres,
                     const std::map<std::int64_t, std::int64_t>& f);

/// sigma(x) via the decay lambdas; > 1 for every nonidentity member.
double scale_eval(const KrullPresentation& pres, const Scale& scale,
                  const MonoidElement& x);

/// Exact value when every base value on the support is rational and every
/// lambda is a whole number; nullopt otherwise.
std::optional<Rat> scale_eval_exact(const KrullPresentation& pres, const Scale& scale,
                                    const MonoidElement& x);

struct ZetaEstimate {
    double partial_sum = 0;
    double truncated_product = 1;
    double lower = 0;
    std::optional<double> upper;
    std::uint64_t terms = 0;
    std::uint64_t atoms = 0;
    std::optional<double> assumed_tail;
    bool upper_conditional = false;
};

/// {"partial_sum", "product", "lower", "upper", "terms", "atoms", "assumed_tail"}
std::string zeta_to_json(const ZetaEstimate& e);
std::string zeta_csv_header();
std::string zeta_to_csv(const ZetaEstimate& e);

/// Min-heap enumeration of the free commutative monoid over atoms with the
/// given sigma values (ascending). Terms come out in non-decreasing sigma,
/// ties broken lexicographically on the exponent vector, each vector exactly
/// once: a popped element is extended only by atoms with index >= its
/// largest atom index (lazy first-child / next-sibling form, so the heap
/// stays linear in the number of pops).
class ClosureEnumerator {
public:
    explicit ClosureEnumerator(std::vector<double> atom_sigmas);

    struct Term {
        double sigma = 1;
        // (atom index, exponent), ascending indices; empty = identity
        std::vector<std::pair<std::uint32_t, std::uint32_t>> exps;
    };

    Term next();

private:
    struct Node {
        double sigma;
        double parent_sigma;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> exps;
        std::uint32_t last;
    };
    struct NodeGreater {
        bool operator()(const Node& a, const Node& b) const {
            if (a.sigma != b.sigma) return a.sigma > b.sigma;
            return a.exps > b.exps;
        }
    };
    std::vector<double> sigmas_;
    std::priority_queue<Node, std::vector<Node>, NodeGreater> heap_;
    bool identity_emitted_ = false;
};

/// Partial sum of 1/sigma(x) over the term_budget heap-smallest elements of
/// the closure of the presented strong atoms (compensated accumulation; the
/// rounding budget is folded into `lower`). The truncated product over all
/// presented atoms fills `truncated_product`; a caller-supplied tail bound
/// (an analytic fact about the omitted atoms, recorded as an assumption)
/// yields `upper`.
ZetaEstimate zeta_partial_sum(const KrullPresentation& pres, const Scale& scale,
                              std::uint64_t term_budget,
                              std::optional<double> tail_bound = std::nullopt);

/// prod (1 - 1/sigma(a))^-1 over the given atoms; empty product = 1.
double euler_product_truncated(const std::vector<double>& atom_sigmas);
Rat euler_product_exact(const std::vector<Rat>& atom_sigmas);

struct UpperBound {
    double value = 0;
    bool conditional = false; // omitted-atom smallness not certified
};

/// truncated_product * e^{2 tail}: valid once every omitted atom satisfies
/// 1/sigma(a) < 1/2 (atoms violating that must be in the explicit list).
UpperBound zeta_upper_bound(double truncated_product, double tail_bound,
                            bool omitted_certified);

/// Exact sum over the closure of finitely many atoms: the product of the
/// geometric-series limits 1/(1 - 1/sigma(a)).
Rat closure_sum_exact(const std::vector<Rat>& atom_sigmas);

/// Exact sum of 1/sigma over the exponent box [0, n]^k by plain term
/// enumeration (independent of the closed form below).
Rat closure_box_sum_enumerated(const std::vector<Rat>& atom_sigmas, std::uint32_t n);

/// The same box via the finite geometric closed form
/// prod (1 - q^{n+1})/(1 - q), q = 1/sigma(a).
Rat closure_box_sum_closed_form(const std::vector<Rat>& atom_sigmas, std::uint32_t n);

struct EulerIdentityReport {
    ZetaEstimate estimate;
    std::vector<double> gaps; // |partial_sum - product| at growing budgets
    bool converged = false;   // gaps shrink and the last one is <= tolerance
    double tolerance = 0;
    // classical-formula criterion: the full-monoid sum against the product
    // over the primes of M (class-0 divisors); equal iff M is a UFM
    double full_monoid_sum = 0;
    std::uint64_t full_monoid_terms = 0;
    double prime_product = 1;
    std::uint64_t prime_count = 0;
    double ufm_gap = 0; // full_monoid_sum - prime_product
    bool primes_are_all_strong_atoms = false;
};

EulerIdentityReport check_euler_identity(const KrullPresentation& pres,
                                         const Scale& scale, std::uint64_t budget,
                                         double tolerance,
                                         std::optional<double> tail_bound,
                                         std::uint64_t monoid_bound);

struct InfinitudeSeries {
    std::string label;
    std::uint64_t count = 0;
    double sum = 0;
};

struct InfinitudeReport {
    std::uint64_t n_bound = 0;
    std::optional<Rat> c;
    // naturals-only evidence: n >= c^Omega(n) checked exactly; the same
    // comparison certifies the term-by-term domination of the harmonic series
    std::optional<std::uint64_t> growth_violations;
    std::optional<double> anti_geometric_sum; // sum (1/c)^Omega(n), n <= N
    std::optional<double> harmonic_sum;       // sum 1/n, 2 <= n <= N
    // any presentation: partial sums of 1/sigma(a) grouped by k(p)
    std::vector<InfinitudeSeries> atom_series;
};

InfinitudeReport infinitude_report(const KrullPresentation& pres, const Scale& scale,
                                   std::optional<Rat> c, std::uint64_t n_bound);

} // namespace krull

#endif
