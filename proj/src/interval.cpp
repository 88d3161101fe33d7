#include "cmnc/interval.hpp"

#include <algorithm>

#include "cmnc/error.hpp"

namespace cmnc {

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval::Interval(mpfr_prec_t prec, long v) : lo_(prec), hi_(prec) {
  mpfr_set_si(lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(hi_.get(), v, MPFR_RNDU);
}

Interval Interval::from_decimal(const std::string& s, mpfr_prec_t prec) {
  Interval r(prec);
  if (mpfr_set_str(r.lo_.get(), s.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_.get(), s.c_str(), 10, MPFR_RNDU) != 0) {
    throw Error(Errc::invalid_argument, "not a decimal number: " + s);
  }
  return r;
}

Interval Interval::from_q(const mpq_class& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_z(const mpz_class& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Real& lo, const Real& hi) {
  Interval r(std::max(lo.prec(), hi.prec()));
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_cmp(r.lo_.get(), r.hi_.get()) > 0) {
    throw Error(Errc::invalid_argument, "Interval::hull: lo > hi");
  }
  return r;
}

double Interval::mid_double() const {
  Real m(prec() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::width_double() const {
  Real w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  Interval r(p);
  Real t(p);
  const Real* xs[2] = {&a.lo_, &a.hi_};
  const Real* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
    throw Error(Errc::domain, "interval division by an interval containing zero");
  }
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  Interval inv(p);
  mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * inv;
}

bool Interval::certainly_lt(const Interval& b) const { return mpfr_less_p(hi_.get(), b.lo_.get()); }
bool Interval::certainly_le(const Interval& b) const {
  return mpfr_lessequal_p(hi_.get(), b.lo_.get());
}
bool Interval::contains(const Interval& b) const {
  return mpfr_lessequal_p(lo_.get(), b.lo_.get()) && mpfr_lessequal_p(b.hi_.get(), hi_.get());
}
bool Interval::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_.get()) < 0) throw Error(Errc::domain, "interval sqrt of a negative value");
  Interval r(a.prec());
  mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_.get()) <= 0) throw Error(Errc::domain, "interval log of a nonpositive value");
  Interval r(a.prec());
  mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

Interval pow(const Interval& base, const Interval& exponent) {
  return exp(exponent * log(base));
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_.get()) >= 0) return a;
  if (mpfr_sgn(a.hi_.get()) <= 0) return -a;
  Interval r(a.prec());
  mpfr_set_zero(r.lo_.get(), 1);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  mpfr_max(r.hi_.get(), r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

}  // namespace cmnc
