#pragma once

// Arbitrary-precision balls on top of MPFR. A BigReal / BigComplex is a
// midpoint plus a guaranteed radius: the true value lies within `rad` of the
// midpoint (complex modulus for BigComplex). Every operation adds its own
// rounding error to the radius; radii are always rounded up.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace cmnc {

inline constexpr mpfr_prec_t kRadPrec = 32;

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(mpfr_prec_t prec, long value) : Real(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  long double to_long_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_ld(v_, rnd); }
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

struct BigReal {
  Real mid;
  Real rad{kRadPrec};

  BigReal() = default;
  explicit BigReal(mpfr_prec_t prec) : mid(prec) {}

  mpfr_prec_t prec() const noexcept { return mid.prec(); }
};

/// Complex ball: |true value - (re + i im)| <= rad.
struct BigComplex {
  Real re;
  Real im;
  Real rad{kRadPrec};

  BigComplex() = default;
  explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}

  mpfr_prec_t prec() const noexcept { return re.prec(); }
  double err_abs() const { return rad.to_double(MPFR_RNDU); }
};

// --- BigReal -----------------------------------------------------------

BigReal real_from_z(const mpz_class& v, mpfr_prec_t prec);
void add(BigReal& out, const BigReal& a, const BigReal& b);
void sub(BigReal& out, const BigReal& a, const BigReal& b);
// `out` must not alias `a` or `b`.
void mul(BigReal& out, const BigReal& a, const BigReal& b);
void neg(BigReal& out, const BigReal& a);
// Upper bound of |x - nearest integer| over the ball, and that integer.
double rounding_residual(const BigReal& x, mpz_class& nearest);

// --- BigComplex --------------------------------------------------------

BigComplex complex_from_si(long re, long im, mpfr_prec_t prec);
void set(BigComplex& out, const BigComplex& a);  // rounds to out's precision
void add(BigComplex& out, const BigComplex& a, const BigComplex& b);
void sub(BigComplex& out, const BigComplex& a, const BigComplex& b);
void add_si(BigComplex& out, const BigComplex& a, long v);
void add_z(BigComplex& out, const BigComplex& a, const mpz_class& v);
void mul_si(BigComplex& out, const BigComplex& a, long v);
// `out` must not alias `a` or `b` in mul / inv / div.
void mul(BigComplex& out, const BigComplex& a, const BigComplex& b);
void sqr(BigComplex& out, const BigComplex& a);
// Throws Error(precision_exhausted) when the ball contains zero.
void inv(BigComplex& out, const BigComplex& a);
void div(BigComplex& out, const BigComplex& a, const BigComplex& b);
void pow_ui(BigComplex& out, const BigComplex& a, unsigned long n);
void conj(BigComplex& out, const BigComplex& a);

// Rigorous bounds of |z| over the ball (lower bound clamped at zero).
void abs_upper(mpfr_ptr out, const BigComplex& z);
void abs_lower(mpfr_ptr out, const BigComplex& z);

// True if 0 may lie in the ball.
bool contains_zero(const BigComplex& z);

// rad <= 2^{-bits} * max(1, |mid|)
bool relative_error_below(const BigComplex& z, long bits);

std::string to_string(const BigComplex& z, int digits = 30);

}  // namespace cmnc
