#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "cmnc/cmcount.hpp"
#include "cmnc/error.hpp"
#include "cmnc/intarith.hpp"
#include "gen.hpp"

using namespace cmnc;

namespace {

// |z - tau|^2 < eps^2 with z = (b + sqrt(Delta)) / 2a, by squaring out the one
// cross term 2 Im z Im tau.
bool oracle_within(std::int64_t a, std::int64_t b, std::int64_t delta, const QuadPoint& tau, const mpq_class& eps) {
  const mpq_class x(b, 2 * a);
  const mpq_class y2(-delta, 4 * a * a);
  const mpq_class dx = x - tau.re;
  const mpq_class lhs = dx * dx + y2 + tau.im_sq - eps * eps;  // < 2 sqrt(y2 im_sq)
  return lhs < 0 || lhs * lhs < 4 * y2 * tau.im_sq;
}

// Every primitive form whose point has |Re z - Re tau| < 1/2 and Im z > Im tau - 1/2,
// which contains the eps-disc for eps < 1/2. Points need not lie in F.
std::int64_t oracle_count(std::int64_t delta, const QuadPoint& tau, const mpq_class& eps) {
  const double im = std::sqrt(tau.im_sq.get_d()), re = tau.re.get_d();
  const auto a_max = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-delta)) / (2 * (im - 0.5))) + 1;
  std::int64_t n = 0;
  for (std::int64_t a = 1; a <= a_max; ++a) {
    const auto b_lo = static_cast<std::int64_t>(std::floor(2 * a * (re - 0.5))) - 1;
    const auto b_hi = static_cast<std::int64_t>(std::ceil(2 * a * (re + 0.5))) + 1;
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
      const std::int64_t num = b * b - delta;
      if (num % (4 * a)) continue;
      const std::int64_t c = num / (4 * a);
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      if (oracle_within(a, b, delta, tau, eps)) ++n;
    }
  }
  return n;
}

QuadPoint i_point() { return {0, 1}; }

mpq_class q(long n, long d) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK(exact_count_eps({i_point(), q(3, 10), Discriminant(-4)}).exact_count == 1);
  CHECK(exact_count_eps({i_point(), q(1, 20), Discriminant(-3)}).exact_count == 0);
  const QuadPoint z6{q(1, 2), q(3, 4)};
  CHECK(exact_count_eps({z6, q(3, 10), Discriminant(-3)}).exact_count == 1);
  const auto r = exact_count_eps({i_point(), q(3, 10), Discriminant(-4)});
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0] == QForm{1, 0, 1});
}

TEST_CASE("strict inequality at exact ties") {
  // i is at distance exactly 1/4 from 5i/4
  const QuadPoint tau{0, q(25, 16)};
  CHECK(exact_count_eps({tau, q(1, 4), Discriminant(-4)}).exact_count == 0);
  CHECK(exact_count_eps({tau, q(1, 4) + q(1, 1000000), Discriminant(-4)}).exact_count == 1);
  CHECK_FALSE(within_eps({1, 0, 1}, tau, q(1, 4)));
  CHECK(within_eps({1, 0, 1}, tau, q(251, 1000)));
  CHECK(exact_count_eps({QuadPoint{0, 4}, q(1, 4), Discriminant(-16)}).exact_count == 1);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(EpsQuery{i_point(), 0, Discriminant(-4)}), Error);
  CHECK_THROWS_AS(validate(EpsQuery{i_point(), q(-1, 3), Discriminant(-4)}), Error);
  CHECK_THROWS_AS(validate(EpsQuery{i_point(), q(1, 2), Discriminant(-4)}), Error);
  CHECK_THROWS_AS(validate(EpsQuery{QuadPoint{0, q(1, 4)}, q(1, 10), Discriminant(-4)}), Error);
}

TEST_CASE("exact count matches the brute-force oracle") {
  testgen::Rng rng(7);
  for (int i = 0; i < 1500; ++i) {
    const std::int64_t delta = testgen::random_disc(rng, 20000);
    QuadPoint tau;
    if (rng.range(0, 1)) {
      const auto forms = enumerate_reduced(Discriminant(testgen::random_disc(rng, 5000)));
      tau = point_of_form(forms[rng.range(0, static_cast<std::int64_t>(forms.size()) - 1)]).z;
    } else {
      tau = sample_fundamental_point(rng.unit(), rng.unit(), rng.unit());
    }
    const mpq_class eps = q(rng.range(1, 499), 1000);
    const EpsQuery qy{tau, eps, Discriminant(delta)};
    const EpsCountResult r = exact_count_eps(qy);
    REQUIRE(r.exact_count == oracle_count(delta, tau, eps));
    REQUIRE(r.exact_count == static_cast<std::int64_t>(r.witnesses.size()));
    std::set<QForm> seen(r.witnesses.begin(), r.witnesses.end());
    REQUIRE(seen.size() == r.witnesses.size());
    for (const auto& f : r.witnesses) {
      REQUIRE(f.discriminant() == delta);
      REQUIRE(std::gcd(std::gcd(f.a, f.b), f.c) == 1);
      REQUIRE(within_eps(f, tau, eps));
    }
    REQUIRE(r.report_only == (eps >= q(1, 4)));
  }
}

TEST_CASE("Theorem bound formula") {
  const EpsQuery qy{i_point(), q(1, 100), Discriminant(-4)};
  const long double s3 = std::sqrt(3.0L), e = 0.01L;
  const long double expect =
      2 * ((48 + 16 * s3) / 3 * 1.5L * 2 * e * e + (12 + 4 * s3) / 3 * 2 * e +
           8 * std::sqrt(2.0L) / std::sqrt(s3 - 1) * 2 * e + 2);
  const Interval v = thm_bound_eps(qy, 2);
  CHECK(v.lo_double() <= static_cast<double>(expect) * (1 + 1e-15));
  CHECK(v.hi_double() >= static_cast<double>(expect) * (1 - 1e-15));
  CHECK(v.width_double() < 1e-20);
  // eps -> 0 leaves 2F
  CHECK(thm_bound_eps({i_point(), q(1, 1000000000), Discriminant(-4)}, 3).hi_double() ==
        doctest::Approx(6).epsilon(1e-6));
  CHECK(thm_bound_eps({i_point(), q(1, 5), Discriminant(-999)}, 4).lo_double() >
        thm_bound_eps({i_point(), q(1, 10), Discriminant(-999)}, 4).hi_double());
}

TEST_CASE("Corollary bound") {
  const Discriminant d(-100000000000000LL);
  const EpsQuery qy{i_point(), q(1, 1000000000), d};
  const double expect =
      256 * (46.488 * 1e7 * 1e-18 * std::log(std::log(1e7)) + 7.752 * 1e7 * 1e-9 + 2);
  CHECK(cor_bound_eps(qy, 256).hi_double() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(cor_bound_eps({i_point(), q(1, 1000000000000000LL), d}, 256).hi_double() ==
        doctest::Approx(512).epsilon(1e-6));
  CHECK_THROWS_AS(cor_bound_eps({i_point(), q(1, 1000), Discriminant(-10000000000000LL)}, 256), Error);
}

TEST_CASE("Corollary dominates the theorem bound near 10^14") {
  testgen::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    std::int64_t delta;
    do delta = -100000000000000LL - rng.range(0, 100000);
    while (!Discriminant::is_valid(delta));
    const mpq_class eps = q(rng.range(1, 249), 1000);
    const EpsQuery qy{sample_fundamental_point(rng.unit(), rng.unit(), rng.unit()), eps, Discriminant(delta)};
    REQUIRE(cor_bound_eps(qy, 256).lo_double() >= thm_bound_eps(qy, 256).hi_double());
  }
}

TEST_CASE("divisor estimates above 10^14") {
  testgen::Rng rng(19);
  for (int i = 0; i < 1000; ++i) {
    std::int64_t delta;
    do delta = -rng.range(100000000000000LL, 4000000000000000000LL);
    while (!Discriminant::is_valid(delta));
    const DivisorEstimate e = check_divisor_estimates(Discriminant(delta));
    REQUIRE(e.sigma0_ok);
    REQUIRE(e.sigma1_ok);
  }
  // a highly composite conductor
  const std::int64_t f = 2LL * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23;
  const DivisorEstimate e = check_divisor_estimates(Discriminant(-3 * f * f));
  CHECK(e.sigma0_ok);
  CHECK(e.sigma1_ok);
}

TEST_CASE("residue classes") {
  ResidueAudit r = residue_class_audit(4, -4);
  CHECK(r.modulus == 2);
  CHECK(r.class_count == 1);
  CHECK(r.bound == 2);
  r = residue_class_audit(3, 1);
  CHECK(r.class_count == 2);
  CHECK(r.modulus == 3);
  CHECK(r.bound == 4);
  CHECK(residue_class_audit(1, -7).class_count == 1);

  testgen::Rng rng(29);
  for (int i = 0; i < 3000; ++i) {
    const std::int64_t a = rng.range(1, 3000);
    const std::int64_t delta = testgen::random_disc(rng, 100000);
    const ResidueAudit x = residue_class_audit(a, delta);
    REQUIRE(x.class_count <= x.bound);
    REQUIRE(x.modulus == a / gcd2(a, delta));
  }
}

TEST_CASE("interval counting lemma") {
  testgen::Rng rng(37);
  for (int i = 0; i < 100000; ++i) {
    const std::int64_t m = rng.range(1, 50);
    const std::int64_t r = rng.range(0, m - 1);
    const std::int64_t lo_n = rng.range(-2000, 2000), lo_d = rng.range(1, 7);
    const mpq_class lo = q(lo_n, lo_d);
    const mpq_class hi = lo + q(rng.range(0, 1000), rng.range(1, 7));
    mpz_class first, last;
    mpz_cdiv_q(first.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(last.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    std::int64_t direct = 0;
    for (long n = first.get_si(); n <= last.get_si(); ++n) {
      if (((n - r) % m + m) % m == 0) ++direct;
    }
    REQUIRE(count_in_interval(lo, hi, m, r) == direct);
    REQUIRE(mpq_class(direct) <= (hi - lo) / m + 1);
  }
}

TEST_CASE("sampled points lie in F") {
  testgen::Rng rng(43);
  for (int i = 0; i < 5000; ++i) {
    REQUIRE(in_fundamental_domain(sample_fundamental_point(rng.unit(), rng.unit(), rng.unit())));
  }
}
