#include "cmnc/bigcomplex.hpp"

#include <cassert>

#include "cmnc/error.hpp"

namespace cmnc {

namespace {

// Scratch values at radius precision; one set per thread.
struct Scratch {
  Real s0{kRadPrec}, s1{kRadPrec}, s2{kRadPrec}, s3{kRadPrec};
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

// rad += ulp(x) when x was rounded. A full ulp covers round-to-nearest.
void add_ulp(mpfr_ptr rad, mpfr_srcptr x, int ternary) {
  if (ternary == 0 || mpfr_zero_p(x)) return;
  auto& t = scratch().s3;
  mpfr_set_ui_2exp(t.get(), 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
  mpfr_add(rad, rad, t.get(), MPFR_RNDU);
}

void hypot_up(mpfr_ptr out, const BigComplex& z) {
  mpfr_hypot(out, z.re.get(), z.im.get(), MPFR_RNDU);
}

}  // namespace

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits > 1 ? digits - 1 : 0, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

// --- BigReal -----------------------------------------------------------

BigReal real_from_z(const mpz_class& v, mpfr_prec_t prec) {
  BigReal r(prec);
  const int t = mpfr_set_z(r.mid.get(), v.get_mpz_t(), MPFR_RNDN);
  add_ulp(r.rad.get(), r.mid.get(), t);
  return r;
}

void add(BigReal& out, const BigReal& a, const BigReal& b) {
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  const int t = mpfr_add(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.mid.get(), t);
}

void sub(BigReal& out, const BigReal& a, const BigReal& b) {
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  const int t = mpfr_sub(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.mid.get(), t);
}

void mul(BigReal& out, const BigReal& a, const BigReal& b) {
  assert(&out != &a && &out != &b);
  auto& s = scratch();
  // |a| rb + |b| ra + ra rb
  mpfr_abs(s.s0.get(), a.mid.get(), MPFR_RNDU);
  mpfr_mul(s.s0.get(), s.s0.get(), b.rad.get(), MPFR_RNDU);
  mpfr_abs(s.s1.get(), b.mid.get(), MPFR_RNDU);
  mpfr_mul(s.s1.get(), s.s1.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(s.s0.get(), s.s0.get(), s.s1.get(), MPFR_RNDU);
  mpfr_mul(s.s1.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(out.rad.get(), s.s0.get(), s.s1.get(), MPFR_RNDU);
  const int t = mpfr_mul(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.mid.get(), t);
}

void neg(BigReal& out, const BigReal& a) {
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  const int t = mpfr_neg(out.mid.get(), a.mid.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.mid.get(), t);
}

double rounding_residual(const BigReal& x, mpz_class& nearest) {
  mpfr_get_z(nearest.get_mpz_t(), x.mid.get(), MPFR_RNDN);
  Real diff(x.prec() + 8);
  mpfr_sub_z(diff.get(), x.mid.get(), nearest.get_mpz_t(), MPFR_RNDU);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
  Real total(kRadPrec);
  mpfr_add(total.get(), diff.get(), x.rad.get(), MPFR_RNDU);
  return total.to_double(MPFR_RNDU);
}

// --- BigComplex --------------------------------------------------------

BigComplex complex_from_si(long re, long im, mpfr_prec_t prec) {
  BigComplex z(prec);
  add_ulp(z.rad.get(), z.re.get(), mpfr_set_si(z.re.get(), re, MPFR_RNDN));
  add_ulp(z.rad.get(), z.im.get(), mpfr_set_si(z.im.get(), im, MPFR_RNDN));
  return z;
}

void set(BigComplex& out, const BigComplex& a) {
  if (&out == &a) return;
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  add_ulp(out.rad.get(), out.re.get(), mpfr_set(out.re.get(), a.re.get(), MPFR_RNDN));
  add_ulp(out.rad.get(), out.im.get(), mpfr_set(out.im.get(), a.im.get(), MPFR_RNDN));
}

void add(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  const int t1 = mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  const int t2 = mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void sub(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  const int t1 = mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  const int t2 = mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void add_si(BigComplex& out, const BigComplex& a, long v) {
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  const int t1 = mpfr_add_si(out.re.get(), a.re.get(), v, MPFR_RNDN);
  const int t2 = mpfr_set(out.im.get(), a.im.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void add_z(BigComplex& out, const BigComplex& a, const mpz_class& v) {
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  const int t1 = mpfr_add_z(out.re.get(), a.re.get(), v.get_mpz_t(), MPFR_RNDN);
  const int t2 = mpfr_set(out.im.get(), a.im.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void mul_si(BigComplex& out, const BigComplex& a, long v) {
  const unsigned long av = v < 0 ? 0UL - static_cast<unsigned long>(v) : static_cast<unsigned long>(v);
  mpfr_mul_ui(out.rad.get(), a.rad.get(), av, MPFR_RNDU);
  const int t1 = mpfr_mul_si(out.re.get(), a.re.get(), v, MPFR_RNDN);
  const int t2 = mpfr_mul_si(out.im.get(), a.im.get(), v, MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void mul(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  assert(&out != &a && &out != &b);
  auto& s = scratch();
  hypot_up(s.s0.get(), a);
  hypot_up(s.s1.get(), b);
  // |a| rb + |b| ra + ra rb
  mpfr_mul(s.s0.get(), s.s0.get(), b.rad.get(), MPFR_RNDU);
  mpfr_mul(s.s1.get(), s.s1.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(s.s0.get(), s.s0.get(), s.s1.get(), MPFR_RNDU);
  mpfr_mul(s.s1.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(out.rad.get(), s.s0.get(), s.s1.get(), MPFR_RNDU);
  const int t1 = mpfr_fmms(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  const int t2 = mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void sqr(BigComplex& out, const BigComplex& a) {
  assert(&out != &a);
  auto& s = scratch();
  // 2|a| ra + ra^2
  hypot_up(s.s0.get(), a);
  mpfr_mul_2ui(s.s0.get(), s.s0.get(), 1, MPFR_RNDU);
  mpfr_add(s.s0.get(), s.s0.get(), a.rad.get(), MPFR_RNDU);
  mpfr_mul(out.rad.get(), s.s0.get(), a.rad.get(), MPFR_RNDU);
  const int t1 = mpfr_fmms(out.re.get(), a.re.get(), a.re.get(), a.im.get(), a.im.get(), MPFR_RNDN);
  const int t2 = mpfr_mul(out.im.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  mpfr_mul_2ui(out.im.get(), out.im.get(), 1, MPFR_RNDN);
  add_ulp(out.rad.get(), out.re.get(), t1);
  add_ulp(out.rad.get(), out.im.get(), t2);
}

void inv(BigComplex& out, const BigComplex& a) {
  assert(&out != &a);
  auto& s = scratch();
  Real& lower = s.s0;
  mpfr_hypot(lower.get(), a.re.get(), a.im.get(), MPFR_RNDD);
  mpfr_sub(s.s1.get(), lower.get(), a.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(s.s1.get()) <= 0) {
    throw Error(Errc::precision_exhausted, "inversion of a ball containing zero");
  }
  // propagated: r / (L (L - r)); rounding of the midpoint: 2^{3-p} / L
  mpfr_mul(s.s1.get(), s.s1.get(), lower.get(), MPFR_RNDD);
  mpfr_div(s.s1.get(), a.rad.get(), s.s1.get(), MPFR_RNDU);
  mpfr_ui_div(s.s2.get(), 1, lower.get(), MPFR_RNDU);
  mpfr_mul_2si(s.s2.get(), s.s2.get(), 3 - static_cast<long>(out.prec()), MPFR_RNDU);
  mpfr_add(out.rad.get(), s.s1.get(), s.s2.get(), MPFR_RNDU);

  Real norm(out.prec() + 2);
  mpfr_fmma(norm.get(), a.re.get(), a.re.get(), a.im.get(), a.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), a.re.get(), norm.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), a.im.get(), norm.get(), MPFR_RNDN);
  mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
}

void div(BigComplex& out, const BigComplex& a, const BigComplex& b) {
  BigComplex r(out.prec());
  inv(r, b);
  mul(out, a, r);
}

void pow_ui(BigComplex& out, const BigComplex& a, unsigned long n) {
  BigComplex base(out.prec()), tmp(out.prec());
  set(base, a);
  BigComplex acc = complex_from_si(1, 0, out.prec());
  while (n) {
    if (n & 1) {
      mul(tmp, acc, base);
      std::swap(acc, tmp);
    }
    n >>= 1;
    if (n) {
      sqr(tmp, base);
      std::swap(base, tmp);
    }
  }
  set(out, acc);
}

void conj(BigComplex& out, const BigComplex& a) {
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  add_ulp(out.rad.get(), out.re.get(), mpfr_set(out.re.get(), a.re.get(), MPFR_RNDN));
  add_ulp(out.rad.get(), out.im.get(), mpfr_neg(out.im.get(), a.im.get(), MPFR_RNDN));
}

void abs_upper(mpfr_ptr out, const BigComplex& z) {
  mpfr_hypot(out, z.re.get(), z.im.get(), MPFR_RNDU);
  mpfr_add(out, out, z.rad.get(), MPFR_RNDU);
}

void abs_lower(mpfr_ptr out, const BigComplex& z) {
  mpfr_hypot(out, z.re.get(), z.im.get(), MPFR_RNDD);
  mpfr_sub(out, out, z.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(out) < 0) mpfr_set_zero(out, 1);
}

bool contains_zero(const BigComplex& z) {
  Real lo(kRadPrec);
  abs_lower(lo.get(), z);
  return mpfr_zero_p(lo.get());
}

bool relative_error_below(const BigComplex& z, long bits) {
  Real bound(kRadPrec);
  mpfr_hypot(bound.get(), z.re.get(), z.im.get(), MPFR_RNDD);
  if (mpfr_cmp_ui(bound.get(), 1) < 0) mpfr_set_ui(bound.get(), 1, MPFR_RNDD);
  mpfr_mul_2si(bound.get(), bound.get(), -bits, MPFR_RNDD);
  return mpfr_cmp(z.rad.get(), bound.get()) <= 0;
}

std::string to_string(const BigComplex& z, int digits) {
  std::string s = z.re.to_string(digits);
  const bool neg = mpfr_sgn(z.im.get()) < 0;
  Real im_abs(z.im.prec());
  mpfr_abs(im_abs.get(), z.im.get(), MPFR_RNDN);
  s += neg ? " - " : " + ";
  s += im_abs.to_string(digits);
  s += "i +/- ";
  s += z.rad.to_string(3);
  return s;
}

}  // namespace cmnc
