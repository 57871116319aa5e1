#include "normdeg/numtheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "normdeg/errors.hpp"

namespace normdeg::numtheory {

namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(n);
  while (true) {
    std::uint64_t x = rng() % (n - 2) + 2;
    std::uint64_t y = x;
    std::uint64_t c = rng() % (n - 1) + 1;
    std::uint64_t d = 1;
    auto step = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    // Brent-style batching of the gcd.
    while (d == 1) {
      std::uint64_t prod = 1;
      std::uint64_t xs = x;
      std::uint64_t ys = y;
      for (int i = 0; i < 64; ++i) {
        x = step(x);
        y = step(step(y));
        std::uint64_t diff = x > y ? x - y : y - x;
        if (diff == 0) break;
        prod = mul_mod(prod, diff, n);
      }
      d = gcd(prod, n);
      if (d == n || prod == 0) {
        // back off to single steps from the saved state
        x = xs;
        y = ys;
        do {
          x = step(x);
          y = step(step(y));
          d = gcd(x > y ? x - y : y - x, n);
        } while (d == 1);
      }
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

class PrimeSieve {
 public:
  std::vector<std::uint64_t> slice(std::size_t start, std::size_t count) {
    std::lock_guard lock(mutex_);
    const std::size_t need = start + count;
    while (primes_.size() < need) {
      if (limit_ >= kSieveLimit) {
        throw SieveExhausted("prime index " + std::to_string(need - 1) +
                             " is beyond the sieve limit " + std::to_string(kSieveLimit));
      }
      grow(std::min<std::uint64_t>(kSieveLimit, std::max<std::uint64_t>(limit_ * 2, 1024)));
    }
    return {primes_.begin() + static_cast<std::ptrdiff_t>(start),
            primes_.begin() + static_cast<std::ptrdiff_t>(need)};
  }

 private:
  void grow(std::uint64_t new_limit) {
    std::vector<bool> composite(new_limit + 1, false);
    composite[0] = composite[1] = true;
    for (std::uint64_t i = 2; i * i <= new_limit; ++i) {
      if (composite[i]) continue;
      for (std::uint64_t j = i * i; j <= new_limit; j += i) composite[j] = true;
    }
    primes_.clear();
    for (std::uint64_t i = 2; i <= new_limit; ++i) {
      if (!composite[i]) primes_.push_back(i);
    }
    limit_ = new_limit;
  }

  std::mutex mutex_;
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

PrimeSieve& sieve() {
  static PrimeSieve instance;
  return instance;
}

}  // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) {
      throw std::overflow_error(std::to_string(base) + "^" + std::to_string(exp) +
                                " overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic below 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& [p, e] : pairs) {
    for (unsigned i = 0; i < e; ++i) v *= p;
  }
  return v;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0 || n > kMaxFactorInput) {
    throw std::invalid_argument("factorize: input must be in [1, 2^63-1], got " +
                                std::to_string(n));
  }
  Factorization f;
  for (std::uint64_t p = 2; p <= kTrialBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.pairs.push_back({p, e});
  }
  if (n > 1) {
    std::map<std::uint64_t, unsigned> rest;
    factor_into(n, rest);
    for (const auto& [p, e] : rest) f.pairs.push_back({p, e});
  }
  return f;
}

std::uint64_t tau(std::uint64_t n) {
  std::uint64_t t = 1;
  for (const auto& pe : factorize(n).pairs) t *= pe.exponent + 1;
  return t;
}

BigInt sigma(std::uint64_t n) {
  BigInt s = 1;
  for (const auto& [p, e] : factorize(n).pairs) {
    BigInt term = 1;
    BigInt power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      term += power;
    }
    s *= term;
  }
  return s;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : factorize(n).pairs) {
    const std::size_t base = divs.size();
    std::uint64_t power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

BigInt gcd_divisor_sum(std::uint64_t n, std::uint64_t r) {
  BigInt total = 0;
  for (std::uint64_t k : divisors(n)) total += gcd(k, r);
  return total;
}

std::vector<std::uint64_t> nth_primes(std::size_t start_index, std::size_t count) {
  return sieve().slice(start_index, count);
}

std::pair<std::uint64_t, unsigned> prime_power_root(std::uint64_t n) {
  if (n == 1) return {1, 0};
  auto f = factorize(n);
  if (f.pairs.size() != 1) return {0, 0};
  return {f.pairs[0].prime, f.pairs[0].exponent};
}

}  // namespace normdeg::numtheory
