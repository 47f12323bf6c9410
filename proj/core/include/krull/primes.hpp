#ifndef KRULL_PRIMES_HPP
#define KRULL_PRIMES_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace krull {

/// Primes <= n in increasing order (plain Eratosthenes; desk-scale n).
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Omega(k) = number of prime factors of k counted with multiplicity,
/// for all k <= n. omega[0] and omega[1] are 0.
std::vector<std::uint8_t> omega_sieve(std::uint32_t n);

/// Prime factorization of n by trial division with all divisors <= limit.
/// A cofactor r > 1 that survives division is accepted as prime only when
/// r <= limit^2 (it then has no factor <= sqrt(r)); otherwise the input is
/// rejected with bound_error instead of being mis-factored.
std::vector<std::pair<std::uint64_t, std::uint32_t>>
factor_trial(std::uint64_t n, std::uint64_t limit);

bool is_prime_u64(std::uint64_t n);

} // namespace krull

#endif
