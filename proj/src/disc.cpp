#include "cmnc/disc.hpp"

#include <string>

#include "cmnc/error.hpp"
#include "cmnc/intarith.hpp"

namespace cmnc {

namespace {

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

}  // namespace

bool Discriminant::is_valid(std::int64_t delta) noexcept {
  if (delta >= 0) return false;
  const auto r = mod4(delta);
  return r == 0 || r == 1;
}

Discriminant::Discriminant(std::int64_t delta) : delta_(delta) {
  if (delta >= 0) {
    throw Error(Errc::not_negative, "discriminant must be negative, got " + std::to_string(delta));
  }
  if (const auto r = mod4(delta); r == 2 || r == 3) {
    throw Error(Errc::invalid_residue,
                "discriminant must be 0 or 1 mod 4, got " + std::to_string(delta));
  }

  // |Delta| = square^2 * squarefree
  std::int64_t square = 1, squarefree = 1;
  for (auto [p, e] : factorize(-delta).factors) {
    const auto prime = static_cast<std::int64_t>(p);
    for (int i = 0; i < e / 2; ++i) square *= prime;
    if (e % 2) squarefree *= prime;
  }
  if (mod4(-squarefree) == 1) {
    d_fund_ = -squarefree;
    f_ = square;
    f_mod_ = f_;
  } else {
    // -squarefree is 2 or 3 mod 4, so D = -4 * squarefree and square is even.
    d_fund_ = -4 * squarefree;
    f_ = square / 2;
    f_mod_ = 2 * f_;
  }
}

std::vector<std::int64_t> quadratic_divisors(const Discriminant& d) {
  std::vector<std::int64_t> out;
  for (auto v : divisors(factorize(d.modified_conductor()))) {
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

}  // namespace cmnc
