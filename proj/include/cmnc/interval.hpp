#pragma once

// Outward-rounded real intervals [lo, hi] over MPFR. Every operation rounds
// the lower endpoint down and the upper endpoint up, so the exact result of
// the corresponding real operation is always enclosed.

#include <gmpxx.h>

#include <string>

#include "cmnc/bigcomplex.hpp"

namespace cmnc {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(mpfr_prec_t prec, long v);

  // Decimal string such as "0.7621" or "-9.78", enclosed exactly.
  static Interval from_decimal(const std::string& s, mpfr_prec_t prec);
  static Interval from_q(const mpq_class& q, mpfr_prec_t prec);
  static Interval from_z(const mpz_class& z, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);
  // [lo, hi] as given; requires lo <= hi.
  static Interval hull(const Real& lo, const Real& hi);

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  mpfr_prec_t prec() const noexcept { return lo_.prec(); }

  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }
  double mid_double() const;
  double width_double() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Throws Error(domain) if b contains 0.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  friend Interval operator+(const Interval& a, long b) { return a + Interval(a.prec(), b); }
  friend Interval operator+(long a, const Interval& b) { return Interval(b.prec(), a) + b; }
  friend Interval operator-(const Interval& a, long b) { return a - Interval(a.prec(), b); }
  friend Interval operator-(long a, const Interval& b) { return Interval(b.prec(), a) - b; }
  friend Interval operator*(const Interval& a, long b) { return a * Interval(a.prec(), b); }
  friend Interval operator*(long a, const Interval& b) { return Interval(b.prec(), a) * b; }
  friend Interval operator/(const Interval& a, long b) { return a / Interval(a.prec(), b); }
  friend Interval operator/(long a, const Interval& b) { return Interval(b.prec(), a) / b; }

  // Certain comparisons: true only if every point of a satisfies the relation.
  bool certainly_lt(const Interval& b) const;
  bool certainly_le(const Interval& b) const;
  bool certainly_gt(const Interval& b) const { return b.certainly_lt(*this); }
  bool certainly_ge(const Interval& b) const { return b.certainly_le(*this); }
  bool contains(const Interval& b) const;
  bool certainly_positive() const;

  std::string to_string(int digits = 12) const;

 private:
  Real lo_, hi_;
  friend Interval sqrt(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval pow(const Interval& base, const Interval& exponent);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval min(const Interval& a, const Interval& b);
  friend Interval abs(const Interval& a);
};

Interval sqrt(const Interval& a);
Interval log(const Interval& a);  // requires a > 0
Interval exp(const Interval& a);
Interval pow(const Interval& base, const Interval& exponent);  // base > 0
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval abs(const Interval& a);

}  // namespace cmnc
