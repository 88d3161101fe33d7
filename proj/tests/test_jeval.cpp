#include <doctest.h>

#include <cmath>

#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/jeval.hpp"
#include "gen.hpp"

using namespace cmnc;

namespace {

// |mid(a) - mid(b)| at generous precision, as a double rounded up.
double mid_distance(const BigComplex& a, const BigComplex& b) {
  const mpfr_prec_t p = 4 * std::max(a.prec(), b.prec());
  Real dr(p), di(p), out(p);
  mpfr_sub(dr.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(di.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_hypot(out.get(), dr.get(), di.get(), MPFR_RNDU);
  return out.to_double(MPFR_RNDU);
}

// |mid(z) - v| + rad(z) as log2, for integer v.
double log2_error_to(const BigComplex& z, long v) {
  const BigComplex w = complex_from_si(v, 0, z.prec());
  const double d = mid_distance(z, w) + z.err_abs();
  return d == 0 ? -HUGE_VAL : std::log2(d);
}

}  // namespace

TEST_CASE("q at the corners of F") {
  const BigComplex qi = eval_q(point_of_form({1, 0, 1}), 128);
  CHECK(qi.re.to_double() == doctest::Approx(std::exp(-2 * M_PI)).epsilon(1e-15));
  CHECK(std::fabs(qi.im.to_double()) < 1e-30);
  const BigComplex q6 = eval_q(point_of_form({1, 1, 1}), 128);
  CHECK(q6.re.to_double() == doctest::Approx(-std::exp(-M_PI * std::sqrt(3.0))).epsilon(1e-15));
  const BigComplex q2i = eval_q(point_of_form({1, 0, 4}), 128);
  CHECK(q2i.re.to_double() == doctest::Approx(std::exp(-4 * M_PI)).epsilon(1e-15));
}

TEST_CASE("j at i and zeta_6 to 2^-200") {
  CHECK(log2_error_to(eval_j(QForm{1, 0, 1}, 256).value, 1728) < -200);
  CHECK(log2_error_to(eval_j(QForm{1, 1, 1}, 256).value, 0) < -200);
}

TEST_CASE("class number one values") {
  const std::pair<QForm, long> known[] = {
      {{1, 1, 2}, -3375},        {{1, 0, 2}, 8000},          {{1, 1, 3}, -32768},
      {{1, 0, 3}, 54000},        {{1, 0, 4}, 287496},        {{1, 1, 5}, -884736},
      {{1, 1, 7}, -12288000},    {{1, 0, 7}, 16581375},      {{1, 1, 11}, -884736000},
      {{1, 1, 17}, -147197952000L}, {{1, 1, 41}, -262537412640768000L},
  };
  for (const auto& [f, v] : known) {
    const JValue j = eval_j(f, 192);
    CHECK(log2_error_to(j.value, v) < -100);
  }
}

TEST_CASE("points outside F") {
  CHECK_THROWS_AS(eval_j(point_of_form({2, 2, 1}), 128), Error);
  CHECK(log2_error_to(eval_j_any(point_of_form({2, 2, 1}), 128).value, 1728) < -90);
  CHECK(log2_error_to(eval_j_any(point_of_form({4, 2, 1}), 128).value, 54000) < -90);
  const JValue a = eval_j_any(point_of_form({2, 2, 1}), 128);
  const JValue b = eval_j(QForm{1, 0, 1}, 128);
  CHECK(mid_distance(a.value, b.value) == 0.0);
}

TEST_CASE("precision doubling on random CM points") {
  testgen::Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    const std::int64_t d = testgen::random_disc(rng, 1000000);
    const auto forms = enumerate_reduced(Discriminant(d));
    const QForm f = forms[rng.range(0, static_cast<std::int64_t>(forms.size()) - 1)];
    const JValue lo = eval_j(f, 96);
    const JValue hi = eval_j(f, 192);
    REQUIRE(mid_distance(lo.value, hi.value) <= lo.value.err_abs());
    // the contract err <= 2^(8 - p) max(1, |j|)
    const double mag = std::max(1.0, std::hypot(lo.value.re.to_double(), lo.value.im.to_double()));
    REQUIRE(lo.value.err_abs() <= std::ldexp(mag, 8 - 96));
  }
}

TEST_CASE("conjugate forms give conjugate values") {
  for (std::int64_t d : {-23, -47, -3299}) {
    for (const auto& f : enumerate_reduced(Discriminant(d))) {
      if (f.b <= 0 || f.b == f.a || f.a == f.c) continue;
      const BigComplex x = eval_j(f, 128).value;
      BigComplex y = eval_j(QForm{f.a, -f.b, f.c}, 128).value;
      conj(y, y);
      CHECK(mid_distance(x, y) <= 2 * (x.err_abs() + y.err_abs()));
    }
  }
}
