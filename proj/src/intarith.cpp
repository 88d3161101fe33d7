#include "cmnc/intarith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cmnc/disc.hpp"
#include "cmnc/error.hpp"

namespace cmnc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// The first 13 primes form a deterministic witness set below 3.3e24.
constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 seed = 1;; ++seed) {
    u64 y = seed + 1, c = seed, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  split(d, primes);
  split(n / d, primes);
}

void require_positive(std::int64_t n, const char* what) {
  if (n <= 0) {
    throw Error(Errc::invalid_argument,
                std::string(what) + ": argument must be positive, got " + std::to_string(n));
  }
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::int64_t n_signed) {
  require_positive(n_signed, "factorize");
  Factorization out;
  out.n = static_cast<u64>(n_signed);
  u64 n = out.n;

  auto push = [&](u64 p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.factors.emplace_back(p, e);
  };
  push(2);
  push(3);
  for (u64 p = 5; p <= kTrialLimit && p * p <= n; p += 6) {
    push(p);
    push(p + 2);
  }
  if (n > 1) {
    std::vector<u64> rest;
    if (n <= kTrialLimit * kTrialLimit) {
      rest.push_back(n);  // no factor below sqrt(n) remained
    } else {
      split(n, rest);
    }
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.factors.emplace_back(rest[i], static_cast<int>(j - i));
      i = j;
    }
  }
  return out;
}

int omega(const Factorization& f) { return static_cast<int>(f.factors.size()); }

u64 sigma0(const Factorization& f) {
  u64 r = 1;
  for (auto [p, e] : f.factors) r *= static_cast<u64>(e + 1);
  return r;
}

u64 sigma1(const Factorization& f) {
  u128 r = 1;
  for (auto [p, e] : f.factors) {
    u128 term = 1, pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      term += pk;
    }
    r *= term;
    if (r > std::numeric_limits<u64>::max()) {
      throw Error(Errc::invalid_argument, "sigma1: result exceeds 64 bits");
    }
  }
  return static_cast<u64>(r);
}

int omega(std::int64_t n) { return omega(factorize(n)); }
u64 sigma0(std::int64_t n) { return sigma0(factorize(n)); }
u64 sigma1(std::int64_t n) { return sigma1(factorize(n)); }

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (auto [p, e] : f.factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t gcd2(std::int64_t m, std::int64_t n) {
  if (m <= 0) throw Error(Errc::invalid_argument, "gcd2: m must be positive");
  if (n == 0) throw Error(Errc::invalid_argument, "gcd2: n must be nonzero");
  const std::int64_t g = std::gcd(m, n);
  std::int64_t d = 1;
  for (auto [p, e] : factorize(g).factors) {
    for (int i = 0; i < e / 2; ++i) d *= static_cast<std::int64_t>(p);
  }
  return d;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && u128(r) * r > n) --r;
  while (u128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

SpfTable::SpfTable(u64 limit) : limit_(limit) {
  if (limit > std::numeric_limits<std::uint32_t>::max() - 1) {
    throw Error(Errc::invalid_argument, "SpfTable: limit too large");
  }
  spf_.assign(limit + 1, 0);
  omega_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 k = 2; k <= limit; ++k) {
    if (spf_[k] == 0) {
      spf_[k] = static_cast<std::uint32_t>(k);
      primes.push_back(static_cast<std::uint32_t>(k));
    }
    const std::uint32_t pk = spf_[k];
    for (std::uint32_t p : primes) {
      if (p > pk || u64(p) * k > limit) break;
      spf_[p * k] = p;
    }
    const u64 rest = k / pk;
    omega_[k] = static_cast<std::uint8_t>(omega_[rest] + (rest == 1 || spf_[rest] != pk ? 1 : 0));
  }
}

std::uint32_t SpfTable::spf(u64 k) const {
  if (k < 2 || k > limit_) throw Error(Errc::invalid_argument, "SpfTable::spf: out of range");
  return spf_[k];
}

int SpfTable::omega(u64 k) const {
  if (k < 1 || k > limit_) throw Error(Errc::invalid_argument, "SpfTable::omega: out of range");
  return omega_[k];
}

Factorization SpfTable::factorize(u64 k) const {
  if (k < 1 || k > limit_) throw Error(Errc::invalid_argument, "SpfTable::factorize: out of range");
  Factorization f;
  f.n = k;
  while (k > 1) {
    const u64 p = spf_[k];
    int e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  return f;
}

std::int64_t max_two_pow_omega(u64 bound, const SpfTable& table) {
  const u64 top = isqrt(bound);
  if (top > table.limit()) {
    throw Error(Errc::table_too_small,
                "sieve limit " + std::to_string(table.limit()) + " too small; need " +
                    std::to_string(top));
  }
  int best = 0;
  for (u64 a = 2; a <= top; ++a) best = std::max(best, table.omega(a));
  return std::int64_t{1} << best;
}

std::int64_t f_of_disc(const Discriminant& d, const SpfTable& table) {
  return max_two_pow_omega(d.abs(), table);
}

}  // namespace cmnc
