#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "gen.hpp"

using namespace cmnc;

namespace {

// Naive oracle: every (a, b) with |b| <= a <= sqrt(|Delta|/3), c from the discriminant.
std::vector<QForm> naive_reduced(std::int64_t delta) {
  std::vector<QForm> out;
  const std::int64_t n = -delta;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = b * b - delta;
      if (num % (4 * a)) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if ((b < 0) && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

// f(px + qy, rx + sy)
QForm act(const QForm& f, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
  return {f.a * p * p + f.b * p * r + f.c * r * r, 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
          f.a * q * q + f.b * q * s + f.c * s * s};
}

}  // namespace

TEST_CASE("enumeration examples") {
  CHECK(enumerate_reduced(Discriminant(-3)) == std::vector<QForm>{{1, 1, 1}});
  CHECK(enumerate_reduced(Discriminant(-4)) == std::vector<QForm>{{1, 0, 1}});
  CHECK(enumerate_reduced(Discriminant(-23)) == std::vector<QForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
  CHECK(enumerate_reduced(Discriminant(-15)) == std::vector<QForm>{{1, 1, 4}, {2, 1, 2}});
  CHECK(class_number(Discriminant(-47)) == 5);
  CHECK(class_number(Discriminant(-71)) == 7);
  CHECK(class_number(Discriminant(-36)) == 2);
  CHECK(class_number(Discriminant(-99)) == 2);
  for (std::int64_t d : kClassNumberOne) CHECK(class_number(Discriminant(d)) == 1);
}

TEST_CASE("enumeration matches the naive oracle to 5000") {
  for (std::int64_t n = 3; n <= 5000; ++n) {
    if (!Discriminant::is_valid(-n)) continue;
    const auto forms = enumerate_reduced(Discriminant(-n));
    REQUIRE(forms == naive_reduced(-n));
    REQUIRE(class_number(Discriminant(-n)) == static_cast<std::int64_t>(forms.size()));
    for (const auto& f : forms) {
      REQUIRE(is_reduced(f));
      REQUIRE(f.discriminant() == -n);
    }
  }
}

TEST_CASE("class number bound pi^-1 |Delta|^1/2 (2 + log |Delta|)") {
  testgen::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t d = testgen::random_disc(rng, 1000000);
    if (d == -3 || d == -4) continue;
    const double x = static_cast<double>(-d);
    REQUIRE(static_cast<double>(class_number(Discriminant(d))) <= std::sqrt(x) * (2 + std::log(x)) / M_PI);
  }
  CHECK(class_number(Discriminant(-10000)) <= 356);
}

TEST_CASE("reduce_form examples") {
  CHECK(reduce_form({1, 0, 1}).first == QForm{1, 0, 1});
  CHECK(reduce_form({1, 0, 1}).second == SL2Z::identity());
  CHECK(reduce_form({2, 2, 1}).first == QForm{1, 0, 1});
  CHECK(reduce_form({3, 2, 5}).first == QForm{3, 2, 5});
  CHECK(reduce_form({2, -2, 3}).first == QForm{2, 2, 3});
  CHECK(reduce_form({3, -1, 3}).first == QForm{3, 1, 3});
}

TEST_CASE("reduce_form inverts random SL2(Z) actions") {
  testgen::Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t d = testgen::random_disc(rng, 20000);
    const auto forms = enumerate_reduced(Discriminant(d));
    const QForm f = forms[rng.range(0, static_cast<std::int64_t>(forms.size()) - 1)];
    // random word in T^k and S with small entries
    std::int64_t p = 1, q = 0, r = 0, s = 1;
    for (int step = 0; step < 4; ++step) {
      const std::int64_t k = rng.range(-3, 3);
      std::tie(p, q, r, s) = std::make_tuple(p, p * k + q, r, r * k + s);  // times T^k
      std::tie(p, q, r, s) = std::make_tuple(q, -p, s, -r);                // times S
    }
    const QForm g = act(f, p, q, r, s);
    REQUIRE(g.discriminant() == d);
    const auto [red, gamma] = reduce_form(g);
    REQUIRE(red == f);
    REQUIRE(gamma.a * gamma.d - gamma.b * gamma.c == 1);
    REQUIRE(apply(gamma, point_of_form(g).z) == point_of_form(red).z);
  }
}

TEST_CASE("points of forms") {
  CHECK(point_of_form({1, 0, 1}).z == QuadPoint{0, 1});
  CHECK(point_of_form({1, 1, 1}).z == QuadPoint{mpq_class(1, 2), mpq_class(3, 4)});
  CHECK(point_of_form({2, 1, 3}).z == QuadPoint{mpq_class(1, 4), mpq_class(23, 16)});
  // reduced forms give points of F, and distinct forms distinct points
  for (std::int64_t d : {-3, -4, -23, -36, -1155, -9999}) {
    const auto forms = enumerate_reduced(Discriminant(d));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      const auto z = point_of_form(forms[i]).z;
      CHECK(in_fundamental_domain(z));
      CHECK(reduce_to_fundamental(z).first == z);
      CHECK(reduce_to_fundamental(z).second == SL2Z::identity());
      for (std::size_t k = 0; k < i; ++k) CHECK_FALSE(point_of_form(forms[k]).z == z);
    }
  }
}

TEST_CASE("fundamental domain boundary convention") {
  const mpq_class half(1, 2);
  CHECK(in_fundamental_domain({0, 1}));                        // i
  CHECK(in_fundamental_domain({half, mpq_class(3, 4)}));       // zeta_6
  CHECK_FALSE(in_fundamental_domain({-half, mpq_class(3, 4)}));  // zeta_3
  CHECK(in_fundamental_domain({half, 5}));
  CHECK_FALSE(in_fundamental_domain({-half, 5}));
  CHECK(in_fundamental_domain({mpq_class(1, 5), mpq_class(24, 25)}));   // on the unit arc, right of i
  CHECK_FALSE(in_fundamental_domain({mpq_class(-1, 5), mpq_class(24, 25)}));
  CHECK_FALSE(in_fundamental_domain({0, mpq_class(1, 4)}));
}

TEST_CASE("reduce_to_fundamental on exact points") {
  {
    const auto [z, g] = reduce_to_fundamental(QuadPoint{5, 1});
    CHECK(z == QuadPoint{0, 1});
    CHECK(g == SL2Z::T(-5));
  }
  CHECK(reduce_to_fundamental(QuadPoint{0, mpq_class(1, 4)}).first == QuadPoint{0, 4});
  CHECK(reduce_to_fundamental(point_of_form({2, 2, 1})).first.form == QForm{1, 0, 1});

  testgen::Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    QuadPoint z{mpq_class(rng.range(-500, 500), rng.range(1, 60)), mpq_class(rng.range(1, 400), rng.range(1, 3000))};
    z.re.canonicalize();
    z.im_sq.canonicalize();
    const auto [w, g] = reduce_to_fundamental(z);
    REQUIRE(in_fundamental_domain(w));
    REQUIRE(apply(g, z) == w);
    REQUIRE(reduce_to_fundamental(w).first == w);
  }
}

TEST_CASE("floating reduction") {
  BigComplex z = complex_from_si(5, 2, 128);
  const auto [w, g] = reduce_to_fundamental(z);
  CHECK(g == SL2Z::T(-5));
  CHECK(w.re.to_double() == 0.0);
  CHECK(w.im.to_double() == 2.0);
  CHECK_THROWS_AS(reduce_to_fundamental(complex_from_si(0, -1, 64)), Error);
}
