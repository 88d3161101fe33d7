#include "cmnc/cmcount.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "cmnc/error.hpp"
#include "cmnc/intarith.hpp"

namespace cmnc {

namespace {

mpq_class q_of(std::int64_t num, std::int64_t den) {
  mpq_class r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

std::int64_t floor_d(double v) { return static_cast<std::int64_t>(std::floor(v)); }
std::int64_t ceil_d(double v) { return static_cast<std::int64_t>(std::ceil(v)); }

}  // namespace

void validate(const EpsQuery& q) {
  if (q.eps <= 0 || q.eps >= mpq_class(1, 2)) {
    throw Error(Errc::invalid_argument, "eps must lie in (0, 1/2)");
  }
  if (!in_fundamental_domain(q.tau)) throw Error(Errc::domain, "tau must lie in F");
}

bool within_eps(const QForm& f, const QuadPoint& tau, const mpq_class& eps) {
  // z = b/2a + i sqrt|D|/2a, tau = x + i sqrt(Y2).
  // |z - tau|^2 < eps^2  <=>  R < sqrt(|D| Y2) / a  with
  // R = (b/2a - x)^2 + |D|/4a^2 + Y2 - eps^2.
  const std::int64_t absd = -f.discriminant();
  const mpq_class dx = q_of(f.b, 2 * f.a) - tau.re;
  const mpz_class a(f.a);
  const mpq_class im2(mpz_class(absd), 4 * a * a);
  const mpq_class r = dx * dx + im2 + tau.im_sq - eps * eps;
  if (r < 0) return true;
  // R^2 < |D| Y2 / a^2
  return r * r < mpq_class(mpz_class(absd), a * a) * tau.im_sq;
}

EpsCountResult exact_count_eps(const EpsQuery& q) {
  validate(q);
  const std::int64_t delta = q.disc.value();
  const double sd = std::sqrt(static_cast<double>(q.disc.abs()));
  const double x = q.tau.re.get_d();
  const double y = std::sqrt(q.tau.im_sq.get_d());
  const double e = q.eps.get_d();
  const double e2 = e * e;

  EpsCountResult out;
  out.report_only = q.eps >= mpq_class(1, 4);
  out.a_interval = {sd / (2 * (y + e)), sd / (2 * (y - e))};
  const std::int64_t a_lo = std::max<std::int64_t>(1, floor_d(out.a_interval.first) - 1);
  const std::int64_t a_hi = ceil_d(out.a_interval.second) + 1;

  for (std::int64_t a = a_lo; a <= a_hi; ++a) {
    std::int64_t b = floor_d(2.0 * a * (x - e)) - 1;
    const std::int64_t b_hi = ceil_d(2.0 * a * (x + e)) + 1;
    if (((b - delta) & 1) != 0) ++b;  // b = Delta (mod 2)
    const double im = sd / (2.0 * a);
    const double dy = im - y;
    for (; b <= b_hi; b += 2) {
      const __int128 m = static_cast<__int128>(b) * b - delta;
      if (m % (4 * a) != 0) continue;
      const std::int64_t c = static_cast<std::int64_t>(m / (4 * a));
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      const QForm f{a, b, c};
      // Floating prefilter; anything near the circle goes to the exact test.
      const double dx = b / (2.0 * a) - x;
      const double d2 = dx * dx + dy * dy;
      if (d2 > e2 * (1 + 1e-9) + 1e-12) continue;
      if (within_eps(f, q.tau, q.eps)) out.witnesses.push_back(f);
    }
  }
  out.exact_count = static_cast<std::int64_t>(out.witnesses.size());
  return out;
}

EpsCountResult exact_count_eps(const EpsQuery& q, const SpfTable& table) {
  EpsCountResult out = exact_count_eps(q);
  const std::int64_t f_val = f_of_disc(q.disc, table);
  out.thm_bound = thm_bound_eps(q, f_val).hi_double();
  if (q.disc.abs() >= 100000000000000ULL) out.cor_bound = cor_bound_eps(q, f_val).hi_double();
  return out;
}

Interval thm_bound_eps(const EpsQuery& q, std::int64_t f_val, mpfr_prec_t prec) {
  const std::int64_t fm = q.disc.modified_conductor();
  const auto fac = factorize(fm);
  const Interval sd = sqrt(Interval::from_z(mpz_class(std::to_string(q.disc.abs())), prec));
  const Interval d14 = sqrt(sd);
  const Interval e = Interval::from_q(q.eps, prec);
  const Interval s3 = sqrt(Interval(prec, 3));
  const Interval ca = (Interval(prec, 48) + 16 * s3) / 3;
  const Interval cb = (Interval(prec, 12) + 4 * s3) / 3;
  const Interval cc = Interval(prec, 8) / sqrt(s3 - 1);
  const Interval s1f = Interval::from_q(
      mpq_class(mpz_class(std::to_string(sigma1(fac))), mpz_class(std::to_string(fm))), prec);
  const Interval s0 = Interval::from_z(mpz_class(std::to_string(sigma0(fac))), prec);
  const Interval inner = ca * s1f * sd * e * e + cb * sd * e + cc * d14 * s0 * e + 2;
  return Interval::from_z(mpz_class(std::to_string(f_val)), prec) * inner;
}

Interval cor_bound_eps(const EpsQuery& q, std::int64_t f_val, mpfr_prec_t prec) {
  if (q.disc.abs() < 100000000000000ULL) {
    throw Error(Errc::hypothesis_not_met, "the corollary bound needs |Delta| >= 10^14");
  }
  const Interval sd = sqrt(Interval::from_z(mpz_class(std::to_string(q.disc.abs())), prec));
  const Interval e = Interval::from_q(q.eps, prec);
  const Interval inner = Interval::from_decimal("46.488", prec) * sd * e * e * log(log(sd)) +
                         Interval::from_decimal("7.752", prec) * sd * e + 2;
  return Interval::from_z(mpz_class(std::to_string(f_val)), prec) * inner;
}

ResidueAudit residue_class_audit(std::int64_t a, std::int64_t delta) {
  if (a < 1 || delta == 0) throw Error(Errc::invalid_argument, "residue audit needs a >= 1, delta != 0");
  ResidueAudit out;
  out.modulus = a / gcd2(a, delta);
  const std::int64_t dm = ((delta % a) + a) % a;
  std::set<std::int64_t> classes;
  for (std::int64_t b = 0; b < a; ++b) {
    if (static_cast<__int128>(b) * b % a == dm) classes.insert(b % out.modulus);
  }
  out.class_count = static_cast<std::int64_t>(classes.size());
  const std::int64_t g = std::gcd(a, delta < 0 ? -delta : delta);
  out.bound = std::int64_t{1} << (omega(a / g) + 1);
  return out;
}

std::int64_t count_in_interval(const mpq_class& lo, const mpq_class& hi, std::int64_t m,
                               std::int64_t r) {
  if (m < 1 || lo > hi) throw Error(Errc::invalid_argument, "count_in_interval needs m >= 1, lo <= hi");
  // smallest n >= lo with n = r mod m, then count steps of m up to hi
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());  // ceil(lo)
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());  // floor(hi)
  const mpz_class mm(m);
  mpz_class shift = (mpz_class(r) - c) % mm;
  if (shift < 0) shift += mm;
  const mpz_class first = c + shift;
  if (first > f) return 0;
  mpz_class n = (f - first) / mm + 1;
  return n.get_si();
}

DivisorEstimate check_divisor_estimates(const Discriminant& d) {
  const mpfr_prec_t p = 128;
  const auto fac = factorize(d.modified_conductor());
  const Interval ad = Interval::from_z(mpz_class(std::to_string(d.abs())), p);
  DivisorEstimate out;
  const Interval s0 = Interval::from_z(mpz_class(std::to_string(sigma0(fac))), p);
  out.sigma0_ok = s0.certainly_le(pow(ad, Interval::from_decimal("0.192", p)));
  const Interval s1f = Interval::from_q(
      mpq_class(mpz_class(std::to_string(sigma1(fac))), mpz_class(std::to_string(d.modified_conductor()))),
      p);
  out.sigma1_ok = s1f.certainly_le(Interval::from_decimal("1.842", p) * log(log(sqrt(ad))));
  return out;
}

QuadPoint sample_fundamental_point(double u0, double u1, double u2) {
  const std::int64_t den = 2000;
  std::int64_t xn = static_cast<std::int64_t>(std::floor(u0 * den)) - den / 2;  // [-1000, 999]
  if (xn <= -den / 2) xn = den / 2;
  const double scale = u2 < 0.1 ? 100.0 : 3.0;
  const std::int64_t tn = static_cast<std::int64_t>(std::floor(u1 * u1 * scale * 1000));
  QuadPoint z;
  z.re = q_of(xn, den);
  z.im_sq = 1 - z.re * z.re + q_of(tn, 1000);
  if (tn == 0 && z.re < 0) z.re = -z.re;
  return z;
}

}  // namespace cmnc
