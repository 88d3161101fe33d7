#include "cmnc/jeval.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cmnc/error.hpp"

namespace cmnc {

namespace {

constexpr double kLog2E = 1.4426950408889634;

struct QData {
  BigComplex q;
  double y;      // pi sqrt|Delta| / a, so |q| = e^{-y}
  double x_abs;  // |pi b / a|
};

// q = e^{-y} (cos x + i sin x) at working precision w, with a rigorous
// relative error (6y + 6|x| + 6) 2^{-w}. Each of pi, sqrt, the products and
// quotients, exp, sin and cos contributes at most one rounding.
QData q_ball(const QForm& f, mpfr_prec_t w) {
  QData out{BigComplex(w), 0, 0};
  const std::int64_t absd = -f.discriminant();
  Real pi(w), y(w), x(w), mag(w), c(w), s(w);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_sqrt_ui(y.get(), static_cast<unsigned long>(absd), MPFR_RNDN);
  mpfr_mul(y.get(), y.get(), pi.get(), MPFR_RNDN);
  mpfr_div_si(y.get(), y.get(), f.a, MPFR_RNDN);
  mpfr_mul_si(x.get(), pi.get(), f.b, MPFR_RNDN);
  mpfr_div_si(x.get(), x.get(), f.a, MPFR_RNDN);
  mpfr_neg(mag.get(), y.get(), MPFR_RNDN);
  mpfr_exp(mag.get(), mag.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
  mpfr_mul(out.q.re.get(), mag.get(), c.get(), MPFR_RNDN);
  mpfr_mul(out.q.im.get(), mag.get(), s.get(), MPFR_RNDN);
  out.y = y.to_double();
  out.x_abs = std::fabs(x.to_double());

  Real& r = out.q.rad;
  mpfr_set_d(r.get(), 6 * out.y + 6 * out.x_abs + 6, MPFR_RNDU);
  mpfr_mul_2si(r.get(), r.get(), -static_cast<long>(w), MPFR_RNDU);
  Real m(kRadPrec);
  mpfr_set(m.get(), mag.get(), MPFR_RNDU);
  mpfr_mul(r.get(), r.get(), m.get(), MPFR_RNDU);
  return out;
}

// log2 of the rigorous E4 tail sum_{n > N} 240 sigma_3(n) Q^n with
// sigma_3(n) <= zeta(3) n^3 < 1.21 n^3 and consecutive ratios at most rho.
double e4_tail_log2(int n_terms, double log2_q) {
  const double n1 = n_terms + 1.0;
  const double rho = std::pow((n1 + 1) / n1, 3) * std::exp2(log2_q);
  if (rho >= 1) return HUGE_VAL;
  return std::log2(240 * 1.21) + 3 * std::log2(n1) + n1 * log2_q - std::log2(1 - rho);
}

void add_pow2(Real& rad, double log2_value) {
  Real t(kRadPrec);
  mpfr_set_ui_2exp(t.get(), 1, static_cast<long>(std::ceil(log2_value)) + 1, MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), t.get(), MPFR_RNDU);
}

std::vector<long> sigma3_table(int n) {
  std::vector<long> s(static_cast<std::size_t>(n) + 1, 0);
  for (long d = 1; d <= n; ++d) {
    const long d3 = d * d * d;
    for (long m = d; m <= n; m += d) s[static_cast<std::size_t>(m)] += d3;
  }
  return s;
}

struct Attempt {
  BigComplex j;
  int terms = 0;
};

Attempt j_at(const QForm& f, mpfr_prec_t w) {
  QData qd = q_ball(f, w);
  const BigComplex& q = qd.q;
  // |q| upper bound with slack for the rounding of y
  const double log2_q = -qd.y * kLog2E * (1 - 1e-12);

  int n_terms = 1;
  const double target = -static_cast<double>(w) - 4;
  while (e4_tail_log2(n_terms, log2_q) > target) ++n_terms;

  // E4 = 1 + 240 q sum_{n>=1} sigma_3(n) q^{n-1}, by Horner
  const auto s3 = sigma3_table(n_terms);
  BigComplex e(w), t(w);
  mpfr_set_si(e.re.get(), s3[static_cast<std::size_t>(n_terms)], MPFR_RNDN);
  for (int n = n_terms - 1; n >= 1; --n) {
    mul(t, e, q);
    add_si(e, t, s3[static_cast<std::size_t>(n)]);
  }
  mul(t, e, q);
  mul_si(e, t, 240);
  add_si(e, e, 1);
  add_pow2(e.rad, e4_tail_log2(n_terms, log2_q));

  // P = sum_k (-1)^k q^{k(3k-1)/2}: exponents e(k), e(k) + k for k >= 1.
  BigComplex p = complex_from_si(1, 0, w);
  BigComplex q3(w), qk = q, step(w), term = q, tmp(w);
  sqr(tmp, q);
  mul(q3, tmp, q);
  mul(step, q3, q);  // q^{3k+1} at k = 1
  long next_exp = 1;
  for (long k = 1;; ++k) {
    const long ek = k * (3 * k - 1) / 2;
    if (ek > n_terms) {
      next_exp = ek;
      break;
    }
    const bool odd = k & 1;
    if (odd) sub(p, p, term); else add(p, p, term);
    if (ek + k > n_terms) {
      next_exp = ek + k;
      break;
    }
    mul(tmp, term, qk);
    if (odd) sub(p, p, tmp); else add(p, p, tmp);
    mul(tmp, term, step);
    std::swap(term, tmp);
    mul(tmp, step, q3);
    std::swap(step, tmp);
    mul(tmp, qk, q);
    std::swap(qk, tmp);
  }
  // tail: sum_{m >= next_exp} |q|^m <= 2 |q|^{next_exp}
  add_pow2(p.rad, 1 + next_exp * log2_q);

  BigComplex p24(w), delta(w), e3(w), j(w);
  pow_ui(p24, p, 24);
  mul(delta, q, p24);
  sqr(tmp, e);
  mul(e3, tmp, e);
  div(j, e3, delta);
  return {std::move(j), n_terms};
}

long bitlen(double v) { return v < 1 ? 0 : static_cast<long>(std::ceil(std::log2(v + 1))); }

void require_in_f(const CMPoint& tau) {
  if (!is_reduced(tau.form)) {
    throw Error(Errc::domain, "point is not in the fundamental domain; reduce first");
  }
}

}  // namespace

BigComplex eval_q(const CMPoint& tau, long prec_bits) {
  require_in_f(tau);
  const double y = M_PI * std::sqrt(static_cast<double>(-tau.form.discriminant())) / tau.form.a;
  const double x = M_PI * std::fabs(static_cast<double>(tau.form.b)) / tau.form.a;
  const mpfr_prec_t w = prec_bits + bitlen(6 * y + 6 * x + 6) + 2;
  return q_ball(tau.form, w).q;
}

JValue eval_j(const CMPoint& tau, long prec_bits) {
  require_in_f(tau);
  if (prec_bits < 16) prec_bits = 16;
  const double y = M_PI * std::sqrt(static_cast<double>(-tau.form.discriminant())) / tau.form.a;
  mpfr_prec_t w = prec_bits + 32 + bitlen(y);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Attempt a = j_at(tau.form, w);
    if (relative_error_below(a.j, prec_bits - 8)) return {std::move(a.j), tau, a.terms};
    w += w / 2 + 32;
  }
  throw Error(Errc::precision_exhausted, "j evaluation did not reach the requested accuracy");
}

JValue eval_j(const QForm& reduced, long prec_bits) { return eval_j(point_of_form(reduced), prec_bits); }

JValue eval_j_any(const CMPoint& z, long prec_bits) {
  auto [reduced, g] = reduce_to_fundamental(z);
  (void)g;
  return eval_j(reduced, prec_bits);
}

}  // namespace cmnc
