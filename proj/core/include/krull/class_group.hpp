#ifndef KRULL_CLASS_GROUP_HPP
#define KRULL_CLASS_GROUP_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "krull/errors.hpp"

namespace krull {

/// Element of a finite abelian group given as a product of cyclic factors.
/// One coordinate per modulus, each reduced into [0, n_i).
using GroupElem = std::vector<std::int64_t>;

/// Finite abelian group Z/n_1 x ... x Z/n_r. The trivial group is any
/// all-ones moduli list (canonically {1}).
struct ClassGroup {
    std::vector<std::int64_t> moduli;

    ClassGroup() : moduli{1} {}
    explicit ClassGroup(std::vector<std::int64_t> m) : moduli(std::move(m)) {
        if (moduli.empty()) moduli = {1};
        for (auto n : moduli)
            if (n < 1) throw spec_error("class group modulus must be >= 1");
    }

    std::size_t rank() const { return moduli.size(); }

    bool is_trivial() const {
        for (auto n : moduli)
            if (n != 1) return false;
        return true;
    }

    /// lcm of the moduli; every element order divides this.
    std::int64_t exponent() const {
        std::int64_t e = 1;
        for (auto n : moduli) e = std::lcm(e, n);
        return e;
    }

    /// |G| = product of the moduli.
    std::uint64_t order() const {
        std::uint64_t o = 1;
        for (auto n : moduli) o *= static_cast<std::uint64_t>(n);
        return o;
    }

    GroupElem zero() const { return GroupElem(moduli.size(), 0); }

    GroupElem reduce(GroupElem v) const {
        check_size(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] %= moduli[i];
            if (v[i] < 0) v[i] += moduli[i];
        }
        return v;
    }

    GroupElem add(const GroupElem& a, const GroupElem& b) const {
        check_size(a);
        check_size(b);
        GroupElem out(moduli.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (a[i] + b[i]) % moduli[i];
        return out;
    }

    GroupElem neg(const GroupElem& a) const {
        check_size(a);
        GroupElem out(moduli.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (moduli[i] - a[i]) % moduli[i];
        return out;
    }

    GroupElem scale(const GroupElem& a, std::int64_t k) const {
        check_size(a);
        GroupElem out(moduli.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::int64_t r = (a[i] % moduli[i]) * (k % moduli[i]) % moduli[i];
            if (r < 0) r += moduli[i];
            out[i] = r;
        }
        return out;
    }

    bool is_zero(const GroupElem& a) const {
        check_size(a);
        for (auto c : a)
            if (c != 0) return false;
        return true;
    }

    /// Multiplicative order of a: lcm_i n_i / gcd(n_i, a_i).
    std::int64_t order_of(const GroupElem& a) const {
        check_size(a);
        std::int64_t k = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            k = std::lcm(k, moduli[i] / std::gcd(moduli[i], a[i]));
        return k;
    }

    bool operator==(const ClassGroup&) const = default;

private:
    void check_size(const GroupElem& v) const {
        if (v.size() != moduli.size())
            throw spec_error("group element has wrong number of coordinates");
    }
};

} // namespace krull

#endif
