#include <doctest.h>

#include <cmath>

#include "cmnc/classpoly.hpp"
#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/heights.hpp"
#include "gen.hpp"

using namespace cmnc;

namespace {

double log_plus(double v) { return std::max(0.0, std::log(std::fabs(v))); }

}  // namespace

TEST_CASE("heights of small singular moduli") {
  CHECK(height_singular(Discriminant(-3)).h == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(height_singular(Discriminant(-4)).h == doctest::Approx(std::log(1728.0)).epsilon(1e-13));
  CHECK(height_singular(Discriminant(-163)).h == doctest::Approx(std::log(262537412640768000.0)).epsilon(1e-13));

  // roots of X^2 + 191025 X - 121287375 in long double
  const long double b = 191025, c = -121287375;
  const long double disc = std::sqrt(b * b - 4 * c);
  const double r1 = static_cast<double>((-b + disc) / 2), r2 = static_cast<double>((-b - disc) / 2);
  const HeightReport h = height_singular(Discriminant(-15));
  CHECK(h.h == doctest::Approx((log_plus(r1) + log_plus(r2)) / 2).epsilon(1e-13));
  CHECK(h.per_conjugate.size() == 2);
  CHECK(h.err < 1e-12);
  CHECK(h.h >= (M_PI * std::sqrt(15.0) - 0.01) / 2);
}

TEST_CASE("height of x - alpha, both routes") {
  const HeightDiffReport a = height_diff_rational(Discriminant(-4), 0);
  CHECK(a.direct.h == doctest::Approx(std::log(1728.0)));
  CHECK(a.inverse_sum == doctest::Approx(0.0));
  CHECK(a.inverse_form == doctest::Approx(std::log(1728.0)));

  const HeightDiffReport b = height_diff_rational(Discriminant(-8), 1728);
  CHECK(b.direct.h == doctest::Approx(std::log(6272.0)));
  CHECK(b.inverse_form == doctest::Approx(std::log(6272.0)));

  const HeightDiffReport c = height_diff_rational(Discriminant(-15), 0);
  CHECK(std::fabs(c.direct.h - c.inverse_form) < 1e-10);
  CHECK(c.norm_log == doctest::Approx(std::log(121287375.0) / 2));

  try {
    height_diff_rational(Discriminant(-3), 0);
    FAIL("expected zero_norm");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_norm);
  }

  ClassPolyCache cache;
  for (std::int64_t n = 3; n <= 400; ++n) {
    if (!Discriminant::is_valid(-n)) continue;
    for (long alpha : {0L, 1728L, -3375L, 8000L, -32768L}) {
      const Discriminant d(-n);
      if (eval_at_integer(cache.get_or_compute(d), alpha) == 0) continue;
      const HeightDiffReport r = height_diff_rational(d, alpha, 128, &cache);
      REQUIRE(std::fabs(r.direct.h - r.inverse_form) < 1e-10);
      REQUIRE(r.err < 1e-10);
    }
  }
}

TEST_CASE("lower bounds") {
  CHECK(lower_bound_51(Discriminant(-16)) == doctest::Approx(4 * M_PI - 0.01));
  CHECK(lower_bound_51(Discriminant(-23)) == doctest::Approx((M_PI * std::sqrt(23.0) - 0.01) / 3));
  try {
    lower_bound_51(Discriminant(-15));
    FAIL("expected hypothesis_not_met");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::hypothesis_not_met);
  }
  const double l3 = std::log(1000.0);
  CHECK(lower_bound_52(Discriminant(-1000)) ==
        doctest::Approx(std::max(3 / std::sqrt(5.0) * l3 - 9.79, l3 / (4 * std::sqrt(5.0)) - 5.93)));
  CHECK(lower_bound_52(Discriminant(-3)) < 0);
  const double l15 = std::log(1e15);
  CHECK(lower_bound_52(Discriminant(-1000000000000000LL)) ==
        doctest::Approx(3 / std::sqrt(5.0) * l15 - 9.79));
  // rounded up
  const Interval i51 = lower_bound_51_interval(Discriminant(-23));
  CHECK(lower_bound_51(Discriminant(-23)) >= i51.hi_double());

  const DiffLowerBound x = diff_height_lower(Discriminant(-16), Discriminant(-3));
  CHECK(x.used_51);
  CHECK(x.h_alpha == doctest::Approx(0.0));
  CHECK(x.value == doctest::Approx(4 * M_PI - 0.01 - std::log(2.0)));
  const DiffLowerBound y = diff_height_lower(Discriminant(-16), Discriminant(-4));
  CHECK(y.value == doctest::Approx(4 * M_PI - 0.01 - std::log(1728.0) - std::log(2.0)));
}

TEST_CASE("lower bounds hold to 3000") {
  for (std::int64_t n = 3; n <= 3000; ++n) {
    if (!Discriminant::is_valid(-n)) continue;
    const Discriminant d(-n);
    const HeightReport h = height_singular(d);
    REQUIRE(h.h >= 0);
    REQUIRE(h.h + h.err >= lower_bound_52a_interval(d).lo_double());
    REQUIRE(h.h + h.err >= lower_bound_52b_interval(d).lo_double());
    if (n >= 16) REQUIRE(h.h + h.err >= lower_bound_51_interval(d).lo_double());
  }
}

TEST_CASE("difference lower bound against measured heights") {
  testgen::Rng rng(53);
  ClassPolyCache cache;
  const std::pair<std::int64_t, long> alphas[] = {{-3, 0}, {-4, 1728}, {-7, -3375}, {-8, 8000}, {-11, -32768}};
  int pairs = 0;
  while (pairs < 200) {
    const Discriminant d(testgen::random_disc(rng, 3000));
    const auto [da, alpha] = alphas[rng.range(0, 4)];
    if (d.value() == da) continue;
    const HeightDiffReport r = height_diff_rational(d, alpha, 128, &cache);
    const DiffLowerBound lb = diff_height_lower(d, Discriminant(da));
    REQUIRE(r.direct.h + r.direct.err >= lb.value);
    ++pairs;
  }
}

TEST_CASE("separation examples") {
  const SeparationReport a = separation_audit(Discriminant(-8), Discriminant(-4));
  CHECK(a.min_distance == doctest::Approx(6272.0));
  CHECK(a.thm52.applicable);
  CHECK(a.thm52.violations == 0);
  CHECK(a.lemma53b.applicable);
  CHECK(a.lemma53b.violations == 0);

  const SeparationReport b = separation_audit(Discriminant(-7), Discriminant(-3));
  CHECK(b.min_distance == doctest::Approx(3375.0));
  CHECK_FALSE(b.lemma53a.applicable);
  CHECK(b.thm52.worst_margin == doctest::Approx(std::log(3375.0 / (800.0 / 2401.0))));

  const SeparationReport c = separation_audit(Discriminant(-7), Discriminant(-4));
  CHECK(c.min_distance == doctest::Approx(5103.0));
  CHECK(c.lemma53b.worst_margin == doctest::Approx(std::log(5103.0 / (2000.0 / 49.0))));

  try {
    separation_audit(Discriminant(-15), Discriminant(-15));
    FAIL("expected equal_discriminants");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::equal_discriminants);
  }
}

TEST_CASE("separation over all pairs to 150") {
  std::vector<ConjugateSet> sets;
  for (std::int64_t n = 3; n <= 150; ++n) {
    if (Discriminant::is_valid(-n)) sets.push_back(conjugates(Discriminant(-n)));
  }
  for (const auto& x : sets) {
    for (const auto& a : sets) {
      if (x.disc == a.disc) continue;
      const SeparationReport r = separation_audit(x, a);
      REQUIRE(r.thm52.violations == 0);
      REQUIRE(r.undecided == 0);
      if (a.disc.value() == -4) {
        REQUIRE(r.lemma53a.violations == 0);
        REQUIRE(r.lemma53b.violations == 0);
      }
    }
  }
}
