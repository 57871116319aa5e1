#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "normdeg/exact_ratio.hpp"

namespace normdeg::numtheory {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes. Empty for 1.
struct Factorization {
  std::vector<PrimePower> pairs;

  BigInt value() const;
  bool is_prime_power() const { return pairs.size() == 1; }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline constexpr std::uint64_t kMaxFactorInput = (std::uint64_t{1} << 63) - 1;

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Trial division up to 10^6, then Pollard-rho. Throws std::invalid_argument
/// for n == 0 or n > 2^63 - 1.
Factorization factorize(std::uint64_t n);

std::uint64_t tau(std::uint64_t n);
BigInt sigma(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Sum over the divisors k of n of gcd(k, r).
BigInt gcd_divisor_sum(std::uint64_t n, std::uint64_t r);

/// Primes p_start, p_{start+1}, ... (p_0 = 2). The sieve grows on demand up
/// to kSieveLimit and throws SieveExhausted beyond it. Thread-safe.
std::vector<std::uint64_t> nth_primes(std::size_t start_index, std::size_t count);

inline constexpr std::uint64_t kSieveLimit = std::uint64_t{1} << 28;

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// base^exp, throwing std::overflow_error if it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// Returns (p, k) with n == p^k for prime p, or (0, 0) when n is not a
/// prime power. n == 1 yields (1, 0).
std::pair<std::uint64_t, unsigned> prime_power_root(std::uint64_t n);

}  // namespace normdeg::numtheory
