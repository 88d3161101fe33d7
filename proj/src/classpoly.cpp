#include "cmnc/classpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmnc/bigcomplex.hpp"
#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/jeval.hpp"

namespace cmnc {

namespace {

using RPoly = std::vector<BigReal>;

// p <- p * (X + c0)
void mul_linear(RPoly& p, const BigReal& c0) {
  const mpfr_prec_t w = c0.prec();
  RPoly out;
  out.reserve(p.size() + 1);
  BigReal t(w);
  for (std::size_t i = 0; i <= p.size(); ++i) {
    BigReal v(w);
    if (i < p.size()) mul(v, c0, p[i]);
    if (i > 0) {
      add(t, v, p[i - 1]);
      std::swap(v, t);
    }
    out.push_back(std::move(v));
  }
  p = std::move(out);
}

// p <- p * (X^2 + c1 X + c0)
void mul_quadratic(RPoly& p, const BigReal& c1, const BigReal& c0) {
  const mpfr_prec_t w = c0.prec();
  RPoly out;
  out.reserve(p.size() + 2);
  BigReal t(w), u(w);
  for (std::size_t i = 0; i < p.size() + 2; ++i) {
    BigReal v(w);
    if (i < p.size()) mul(v, c0, p[i]);
    if (i >= 1 && i - 1 < p.size()) {
      mul(t, c1, p[i - 1]);
      add(u, v, t);
      std::swap(v, u);
    }
    if (i >= 2) {
      add(u, v, p[i - 2]);
      std::swap(v, u);
    }
    out.push_back(std::move(v));
  }
  p = std::move(out);
}

BigReal component(const Real& x, const Real& rad, mpfr_prec_t w) {
  BigReal r(w);
  mpfr_set(r.rad.get(), rad.get(), MPFR_RNDU);
  const int t = mpfr_set(r.mid.get(), x.get(), MPFR_RNDN);
  if (t != 0) {
    Real u(kRadPrec);
    mpfr_set_ui_2exp(u.get(), 1, mpfr_get_exp(r.mid.get()) - w, MPFR_RNDU);
    mpfr_add(r.rad.get(), r.rad.get(), u.get(), MPFR_RNDU);
  }
  return r;
}

bool is_ambiguous(const QForm& f) { return f.b == 0 || f.b == f.a || f.a == f.c; }

}  // namespace

std::string ClassPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0 && !(first && i == 0)) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && i > 0;
    if (!unit) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

long hilbert_initial_bits(const Discriminant& d) {
  double inv_sum = 0;
  const auto forms = enumerate_reduced(d);
  for (const auto& f : forms) inv_sum += 1.0 / static_cast<double>(f.a);
  const double bits = M_PI * std::sqrt(static_cast<double>(d.abs())) * inv_sum / std::log(2.0);
  return static_cast<long>(std::ceil(bits)) + 10 * static_cast<long>(forms.size()) + 64;
}

ClassPolynomial hilbert_poly_at(const Discriminant& d, long bits) {
  const auto forms = enumerate_reduced(d);
  const mpfr_prec_t w = bits;
  RPoly p;
  {
    BigReal one(w);
    mpfr_set_ui(one.mid.get(), 1, MPFR_RNDN);
    p.push_back(std::move(one));
  }
  double max_imag = 0;
  for (const auto& f : forms) {
    if (f.b < 0) continue;  // handled with its partner (a, -b, c)
    const JValue jv = eval_j(f, bits);
    const BigComplex& j = jv.value;
    BigReal re = component(j.re, j.rad, w);
    if (is_ambiguous(f)) {
      Real im(kRadPrec);
      mpfr_abs(im.get(), j.im.get(), MPFR_RNDU);
      mpfr_add(im.get(), im.get(), j.rad.get(), MPFR_RNDU);
      max_imag = std::max(max_imag, im.to_double(MPFR_RNDU));
      BigReal c0(w);
      neg(c0, re);
      mul_linear(p, c0);
    } else {
      BigReal im = component(j.im, j.rad, w);
      BigReal c1(w), c0(w), t(w), u(w);
      // X^2 - 2 Re j X + |j|^2
      neg(t, re);
      add(c1, t, t);
      mul(t, re, re);
      mul(u, im, im);
      add(c0, t, u);
      mul_quadratic(p, c1, c0);
    }
  }

  ClassPolynomial h{d, {}, {}};
  h.cert.prec_bits_used = bits;
  h.cert.max_imag_residual = max_imag;
  double max_res = 0;
  for (const auto& c : p) {
    mpz_class n;
    max_res = std::max(max_res, rounding_residual(c, n));
    h.coeffs.push_back(n);
  }
  h.cert.max_rounding_residual = max_res;
  return h;
}

ClassPolynomial hilbert_poly(const Discriminant& d) {
  long bits = hilbert_initial_bits(d);
  for (int attempt = 0; attempt <= 4; ++attempt, bits *= 2) {
    ClassPolynomial a = hilbert_poly_at(d, bits);
    if (a.cert.max_rounding_residual >= 0.25 || a.cert.max_imag_residual >= 0.25) continue;
    ClassPolynomial b = hilbert_poly_at(d, bits + 64);
    if (b.cert.max_rounding_residual >= 0.25 || b.cert.max_imag_residual >= 0.25) continue;
    if (a.coeffs != b.coeffs) continue;
    return a;
  }
  throw Error(Errc::precision_exhausted,
              "class polynomial certification failed for " + std::to_string(d.value()));
}

mpz_class eval_at_integer(const ClassPolynomial& h, const mpz_class& m) { return horner(h.coeffs, m); }

const char* to_string(NormResult::Mode m) {
  return m == NormResult::Mode::exact_rational_alpha ? "exact-rational-alpha" : "pair-product";
}

double log_abs(const mpz_class& v) {
  if (v == 0) throw Error(Errc::zero_norm, "log of zero");
  long e = 0;
  const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

NormResult norm_diff_rational_alpha(const Discriminant& d, const mpz_class& alpha,
                                    ClassPolyCache* cache) {
  const ClassPolynomial h = cache ? cache->get_or_compute(d) : hilbert_poly(d);
  mpz_class v = eval_at_integer(h, alpha);
  if (v == 0) {
    throw Error(Errc::zero_norm,
                "alpha = " + alpha.get_str() + " is a root of H_" + std::to_string(d.value()));
  }
  v = abs(v);
  NormResult r;
  r.log_abs = log_abs(v);
  r.exact = v;
  r.mode = NormResult::Mode::exact_rational_alpha;
  return r;
}

NormResult pair_product_log(const Discriminant& d1, const Discriminant& d2, ClassPolyCache* cache) {
  if (d1 == d2) {
    throw Error(Errc::equal_discriminants, "pair product needs distinct discriminants");
  }
  const ClassPolynomial h1 = cache ? cache->get_or_compute(d1) : hilbert_poly(d1);
  const ClassPolynomial h2 = cache ? cache->get_or_compute(d2) : hilbert_poly(d2);
  mpz_class res = abs(resultant(h1.coeffs, h2.coeffs));
  NormResult r;
  r.mode = NormResult::Mode::pair_product;
  r.log_abs = log_abs(res);
  r.exact = res;

  // Floating cross-check: sum of log |alpha_i - x_j| over numerical roots.
  const auto f1 = enumerate_reduced(d1);
  const auto f2 = enumerate_reduced(d2);
  std::vector<JValue> j1, j2;
  for (const auto& f : f1) j1.push_back(eval_j(f, 192));
  for (const auto& f : f2) j2.push_back(eval_j(f, 192));
  double sum = 0;
  Real m(192);
  for (const auto& a : j1) {
    for (const auto& b : j2) {
      BigComplex diff(192);
      sub(diff, a.value, b.value);
      mpfr_hypot(m.get(), diff.re.get(), diff.im.get(), MPFR_RNDN);
      mpfr_log(m.get(), m.get(), MPFR_RNDN);
      sum += m.to_double();
    }
  }
  const double scale = std::max(1.0, std::fabs(r.log_abs));
  if (std::fabs(sum - r.log_abs) > 1e-6 * scale) {
    throw Error(Errc::precision_exhausted, "resultant and numerical root product disagree");
  }
  return r;
}

}  // namespace cmnc
