#pragma once

// Exact integer utilities: deterministic factorization, divisor functions,
// the greatest common quadratic divisor and a smallest-prime-factor sieve.

#include <cstdint>
#include <utility>
#include <vector>

namespace cmnc {

class Discriminant;

struct Factorization {
  std::uint64_t n = 1;
  // (prime, exponent), primes strictly increasing.
  std::vector<std::pair<std::uint64_t, int>> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Trial division to 10^6, then Brent-Pollard rho with fixed seeds.
// Rejects n <= 0.
Factorization factorize(std::int64_t n);

int omega(std::int64_t n);
std::uint64_t sigma0(std::int64_t n);
std::uint64_t sigma1(std::int64_t n);

int omega(const Factorization& f);
std::uint64_t sigma0(const Factorization& f);
std::uint64_t sigma1(const Factorization& f);

// Sorted list of all positive divisors.
std::vector<std::uint64_t> divisors(const Factorization& f);

// Largest d >= 1 with d^2 | m and d^2 | n. Requires m >= 1, n != 0.
std::int64_t gcd2(std::int64_t m, std::int64_t n);

// floor(sqrt(n)) for n >= 0, exact.
std::uint64_t isqrt(std::uint64_t n);

/// Smallest-prime-factor table for 2 <= k <= limit, built with a linear
/// sieve. Also stores omega(k) so that scans over ranges are O(limit).
/// Immutable after construction.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint32_t spf(std::uint64_t k) const;
  int omega(std::uint64_t k) const;
  Factorization factorize(std::uint64_t k) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> omega_;
};

// max{ 2^omega(a) : 1 <= a, a^2 <= bound }. Throws table_too_small when the
// table does not reach floor(sqrt(bound)).
std::int64_t max_two_pow_omega(std::uint64_t bound, const SpfTable& table);

// F(Delta) = max{ 2^omega(a) : a <= |Delta|^{1/2} }.
std::int64_t f_of_disc(const Discriminant& d, const SpfTable& table);

}  // namespace cmnc
