#include <doctest.h>

#include "cmnc/disc.hpp"
#include "cmnc/error.hpp"
#include "cmnc/intarith.hpp"
#include "gen.hpp"

using namespace cmnc;

namespace {

Errc code_of(std::int64_t delta) {
  try {
    Discriminant d(delta);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << delta);
  return Errc::io;
}

bool squarefree(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

bool is_fundamental(std::int64_t d) {
  const std::int64_t n = -d;
  if (n % 4 == 3) return squarefree(n);
  if (n % 16 == 4 || n % 16 == 8) return squarefree(n / 4);
  return false;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(code_of(0) == Errc::not_negative);
  CHECK(code_of(5) == Errc::not_negative);
  CHECK(code_of(-1) == Errc::invalid_residue);
  CHECK(code_of(-2) == Errc::invalid_residue);
  CHECK(code_of(-5) == Errc::invalid_residue);
  CHECK(code_of(-6) == Errc::invalid_residue);
  CHECK(Discriminant::is_valid(-3));
  CHECK_FALSE(Discriminant::is_valid(-1));
  CHECK_FALSE(Discriminant::is_valid(1));
  CHECK(is_validation_error(Errc::invalid_residue));
  CHECK_FALSE(is_validation_error(Errc::precision_exhausted));
}

TEST_CASE("conductor decomposition examples") {
  const Discriminant d(-144);
  CHECK(d.fundamental() == -4);
  CHECK(d.conductor() == 6);
  CHECK(d.modified_conductor() == 12);
  CHECK(quadratic_divisors(d) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});

  const Discriminant e(-63);
  CHECK(e.fundamental() == -7);
  CHECK(e.conductor() == 3);
  CHECK(e.modified_conductor() == 3);
  CHECK(quadratic_divisors(e) == std::vector<std::int64_t>{1, 3});

  CHECK(Discriminant(-12).fundamental() == -3);
  CHECK(Discriminant(-12).modified_conductor() == 2);
  CHECK(Discriminant(-16).modified_conductor() == 4);
  CHECK(quadratic_divisors(Discriminant(-16)) == std::vector<std::int64_t>{1, 2, 4});
  CHECK(Discriminant(-3).modified_conductor() == 1);
  CHECK(Discriminant(-8).modified_conductor() == 2);
  CHECK(Discriminant(-4).fundamental() == -4);
}

TEST_CASE("random discriminants decompose consistently") {
  testgen::Rng rng(3);
  for (int i = 0; i < 3000; ++i) {
    const std::int64_t delta = testgen::random_disc(rng, 2000000);
    const Discriminant d(delta);
    REQUIRE(d.conductor() * d.conductor() * d.fundamental() == delta);
    REQUIRE(is_fundamental(d.fundamental()));
    const std::int64_t D = d.fundamental();
    REQUIRE(d.modified_conductor() == ((D % 4 == 0) ? 2 * d.conductor() : d.conductor()));
    // quadratic divisors are exactly the divisors of f~
    const auto qd = quadratic_divisors(d);
    const auto divs = divisors(factorize(d.modified_conductor()));
    REQUIRE(qd.size() == divs.size());
    for (std::size_t k = 0; k < qd.size(); ++k) REQUIRE(static_cast<std::uint64_t>(qd[k]) == divs[k]);
  }
}

TEST_CASE("quadratic divisors are the d with d^2 | Delta, exhaustively to 10^5") {
  for (std::int64_t n = 3; n <= 100000; ++n) {
    if (!Discriminant::is_valid(-n)) continue;
    std::vector<std::int64_t> scan;
    for (std::int64_t k = 1; k * k <= n; ++k) {
      if (n % (k * k) == 0) scan.push_back(k);
    }
    REQUIRE(quadratic_divisors(Discriminant(-n)) == scan);
  }
}

TEST_CASE("rejection set over [-10^4, 10^4]") {
  for (std::int64_t v = -10000; v <= 10000; ++v) {
    const std::int64_t r = ((v % 4) + 4) % 4;
    REQUIRE(Discriminant::is_valid(v) == (v < 0 && (r == 0 || r == 1)));
  }
}

TEST_CASE("class number one list") {
  for (std::int64_t d : kClassNumberOne) CHECK(Discriminant::is_valid(d));
}
