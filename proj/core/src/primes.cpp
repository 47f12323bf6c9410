#include "krull/primes.hpp"

#include <string>

#include "krull/errors.hpp"

namespace krull {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::uint8_t> omega_sieve(std::uint32_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0); // smallest prime factor
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    std::vector<std::uint8_t> omega(n + 1, 0);
    for (std::uint32_t i = 2; i <= n; ++i)
        omega[i] = static_cast<std::uint8_t>(omega[i / spf[i]] + 1);
    return omega;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>>
factor_trial(std::uint64_t n, std::uint64_t limit) {
    if (n == 0) throw spec_error("cannot factor 0");
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    auto strip = [&](std::uint64_t p) {
        std::uint32_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    for (std::uint64_t p = 3; p <= limit && p * p <= n; p += 2) strip(p);
    if (n > 1) {
        if (limit < (1ull << 32) && n > limit * limit)
            throw bound_error("factoring " + std::to_string(n) +
                              " exceeds the trial-division limit " +
                              std::to_string(limit));
        out.emplace_back(n, 1);
    }
    return out;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

} // namespace krull
