#include "cmnc/forms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cmnc/error.hpp"
#include "cmnc/intarith.hpp"

namespace cmnc {

namespace {

using i128 = __int128;

std::int64_t checked(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::domain, std::string(what) + " overflows");
  return static_cast<std::int64_t>(v);
}

// floor(x / y) for y > 0
std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && (x < 0)) --q;
  return q;
}

struct Reducer {
  QForm f;
  SL2Z g;

  // b -> b + 2an with -a < b <= a
  void normalize_b() {
    const std::int64_t n = floor_div(f.a - f.b, 2 * f.a);
    if (n == 0) return;
    const i128 b2 = static_cast<i128>(f.b) + 2 * static_cast<i128>(f.a) * n;
    // c' = a n^2 + b n + c
    const i128 c2 = static_cast<i128>(f.a) * n * n + static_cast<i128>(f.b) * n + f.c;
    f.b = checked(b2, "reduce_form");
    f.c = checked(c2, "reduce_form");
    g = SL2Z::T(n) * g;
  }
  void swap_s() {
    f = {f.c, -f.b, f.a};
    g = SL2Z::S() * g;
  }
  void run() {
    for (;;) {
      normalize_b();
      if (f.a > f.c || (f.a == f.c && f.b < 0)) {
        swap_s();
        continue;
      }
      return;
    }
  }
};

}  // namespace

std::int64_t QForm::discriminant() const {
  const i128 v = static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c;
  return checked(v, "discriminant");
}

void validate(const QForm& f) {
  if (f.a <= 0) throw Error(Errc::invalid_argument, "form needs a > 0");
  if (std::gcd(std::gcd(f.a, f.b), f.c) != 1) {
    throw Error(Errc::invalid_argument, "form is not primitive");
  }
  if (f.discriminant() >= 0) throw Error(Errc::invalid_argument, "form is not definite");
}

SL2Z operator*(const SL2Z& x, const SL2Z& y) {
  auto m = [](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    return checked(static_cast<i128>(p) * q + static_cast<i128>(r) * s, "SL2Z product");
  };
  return {m(x.a, y.a, x.b, y.c), m(x.a, y.b, x.b, y.d), m(x.c, y.a, x.d, y.c),
          m(x.c, y.b, x.d, y.d)};
}

bool is_reduced(const QForm& f) {
  const std::int64_t ab = f.b < 0 ? -f.b : f.b;
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

std::pair<QForm, SL2Z> reduce_form(const QForm& f) {
  validate(f);
  Reducer r{f, SL2Z::identity()};
  r.run();
  return {r.f, r.g};
}

std::vector<QForm> enumerate_reduced(const Discriminant& d) {
  const std::int64_t delta = d.value();
  const std::uint64_t n = d.abs();
  std::vector<QForm> out;
  // 3b^2 <= 3a^2 <= 4ac - b^2 + b^2 ... i.e. b^2 <= |Delta| / 3
  const std::int64_t bmax = static_cast<std::int64_t>(isqrt(n / 3));
  for (std::int64_t b = (delta & 1) ? 1 : 0; b <= bmax; b += 2) {
    const std::int64_t m = (b * b - delta) / 4;  // = ac
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
      if (m % a) continue;
      const std::int64_t c = m / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
      if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const QForm& x, const QForm& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  return out;
}

std::int64_t class_number(const Discriminant& d) {
  const std::int64_t delta = d.value();
  const std::int64_t bmax = static_cast<std::int64_t>(isqrt(d.abs() / 3));
  std::int64_t h = 0;
  for (std::int64_t b = (delta & 1) ? 1 : 0; b <= bmax; b += 2) {
    const std::int64_t m = (b * b - delta) / 4;
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
      if (m % a) continue;
      const std::int64_t c = m / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      h += (b != 0 && b != a && a != c) ? 2 : 1;
    }
  }
  return h;
}

CMPoint point_of_form(const QForm& f) {
  validate(f);
  CMPoint p;
  p.form = f;
  p.z.re = mpq_class(mpz_class(f.b), mpz_class(2 * f.a));
  p.z.re.canonicalize();
  const mpz_class a(f.a);
  p.z.im_sq = mpq_class(mpz_class(-f.discriminant()), 4 * a * a);
  p.z.im_sq.canonicalize();
  return p;
}

QuadPoint apply(const SL2Z& g, const QuadPoint& z) {
  // (az + b)/(cz + d) = [(az+b)(c conj(z) + d)] / |cz + d|^2
  const mpq_class a(mpz_class(g.a)), b(mpz_class(g.b)), c(mpz_class(g.c)), d(mpz_class(g.d));
  const mpq_class x = z.re, y2 = z.im_sq;
  const mpq_class den = (c * x + d) * (c * x + d) + c * c * y2;
  QuadPoint out;
  // real part of (a z + b)(c zbar + d) = a c |z|^2 + (a d + b c) x + b d
  out.re = (a * c * (x * x + y2) + (a * d + b * c) * x + b * d) / den;
  // imaginary part = (ad - bc) y = y
  out.im_sq = y2 / (den * den);
  return out;
}

bool in_fundamental_domain(const QuadPoint& z) {
  static const mpq_class half(1, 2);
  if (!(z.re > -half && z.re <= half)) return false;
  const mpq_class n2 = z.re * z.re + z.im_sq;
  if (n2 < 1) return false;
  if (n2 == 1 && z.re < 0) return false;
  return true;
}

std::pair<QuadPoint, SL2Z> reduce_to_fundamental(const QuadPoint& z) {
  if (z.im_sq <= 0) throw Error(Errc::domain, "point is not in the upper half plane");
  static const mpq_class half(1, 2);
  QuadPoint w = z;
  SL2Z g;
  for (;;) {
    // n = floor(1/2 - re) puts re into (-1/2, 1/2]
    mpq_class t = half - w.re;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    if (fl != 0) {
      if (!fl.fits_slong_p()) throw Error(Errc::domain, "translation out of range");
      const long n = fl.get_si();
      w.re += fl;
      g = SL2Z::T(n) * g;
    }
    const mpq_class n2 = w.re * w.re + w.im_sq;
    if (n2 < 1 || (n2 == 1 && w.re < 0)) {
      w = {-w.re / n2, w.im_sq / (n2 * n2)};
      g = SL2Z::S() * g;
      continue;
    }
    return {w, g};
  }
}

std::pair<CMPoint, SL2Z> reduce_to_fundamental(const CMPoint& p) {
  auto [f, g] = reduce_form(p.form);
  return {point_of_form(f), g};
}

BigComplex to_ball(const QuadPoint& z, mpfr_prec_t prec) {
  BigComplex out(prec);
  mpfr_set_q(out.re.get(), z.re.get_mpq_t(), MPFR_RNDN);
  Real y2(prec + 8);
  mpfr_set_q(y2.get(), z.im_sq.get_mpq_t(), MPFR_RNDN);
  mpfr_sqrt(out.im.get(), y2.get(), MPFR_RNDN);
  // half an ulp on re, a little over half an ulp on im; charge a full ulp each
  Real e(kRadPrec);
  mpfr_set_ui_2exp(out.rad.get(), 1, mpfr_get_exp(out.im.get()) - prec + 1, MPFR_RNDU);
  if (mpfr_sgn(out.re.get()) != 0) {
    mpfr_set_ui_2exp(e.get(), 1, mpfr_get_exp(out.re.get()) - prec, MPFR_RNDU);
    mpfr_add(out.rad.get(), out.rad.get(), e.get(), MPFR_RNDU);
  }
  return out;
}

std::pair<BigComplex, SL2Z> reduce_to_fundamental(const BigComplex& z0) {
  const mpfr_prec_t p = z0.prec();
  Real lo(p), hi(p), tmp(p);
  // Im z must be certainly positive.
  mpfr_sub(lo.get(), z0.im.get(), z0.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) <= 0) throw Error(Errc::domain, "Im z is not certainly positive");

  BigComplex w = z0, t(p);
  SL2Z g;
  for (int iter = 0; iter < 100000; ++iter) {
    // translate by the nearest integer of the midpoint
    mpfr_set_d(tmp.get(), 0.5, MPFR_RNDN);
    mpfr_sub(tmp.get(), tmp.get(), w.re.get(), MPFR_RNDN);
    mpfr_floor(tmp.get(), tmp.get());
    const long n = mpfr_get_si(tmp.get(), MPFR_RNDN);
    if (n != 0) {
      add_si(t, w, n);
      std::swap(w, t);
      g = SL2Z::T(n) * g;
    }
    // |z| vs 1
    abs_upper(hi.get(), w);
    abs_lower(lo.get(), w);
    if (mpfr_cmp_ui(hi.get(), 1) < 0) {
      inv(t, w);  // -1/z: negation is exact
      mpfr_neg(w.re.get(), t.re.get(), MPFR_RNDN);
      mpfr_neg(w.im.get(), t.im.get(), MPFR_RNDN);
      mpfr_set(w.rad.get(), t.rad.get(), MPFR_RNDU);
      g = SL2Z::S() * g;
      continue;
    }
    const bool on_circle = mpfr_cmp_ui(lo.get(), 1) <= 0;
    // Re z against -1/2 and 1/2
    mpfr_sub(lo.get(), w.re.get(), w.rad.get(), MPFR_RNDD);
    mpfr_add(hi.get(), w.re.get(), w.rad.get(), MPFR_RNDU);
    const bool near_left = mpfr_cmp_d(lo.get(), -0.5) <= 0;
    const bool near_right = mpfr_cmp_d(hi.get(), 0.5) > 0;
    if (near_left || near_right) {
      throw Error(Errc::undecidable_boundary, "ball straddles Re z = +-1/2");
    }
    if (on_circle) {
      // The arc is in F only for Re z >= 0; a ball touching |z| = 1 can be
      // decided only if it is certainly on that side and |z| >= 1 there.
      throw Error(Errc::undecidable_boundary, "ball straddles |z| = 1");
    }
    return {w, g};
  }
  throw Error(Errc::undecidable_boundary, "reduction did not terminate");
}

}  // namespace cmnc
