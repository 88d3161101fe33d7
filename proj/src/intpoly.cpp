#include "cmnc/intpoly.hpp"

#include <utility>

namespace cmnc {

namespace {

mpz_class content(const ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

void divide_exact(ZPoly& p, const mpz_class& d) {
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

mpz_class pow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// lc(b)^{deg a - deg b + 1} a mod b
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const int db = degree(b);
  const mpz_class& lb = b.back();
  int da = degree(a);
  int e = da - db + 1;
  while (da >= db) {
    const mpz_class la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(da - db + i)] -= la * b[static_cast<std::size_t>(i)];
    normalize(a);
    --e;
    da = degree(a);
  }
  if (e > 0) {
    const mpz_class f = pow(lb, static_cast<unsigned long>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

}  // namespace

void normalize(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

mpz_class horner(const ZPoly& p, const mpz_class& x) {
  mpz_class r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

ZPoly multiply(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

mpz_class resultant(ZPoly a, ZPoly b) {
  normalize(a);
  normalize(b);
  if (a.empty() || b.empty()) return 0;
  int da = degree(a), db = degree(b);
  if (da == 0) return pow(a[0], static_cast<unsigned long>(db));
  if (db == 0) return pow(b[0], static_cast<unsigned long>(da));

  int s = 1;
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
    if ((da & 1) && (db & 1)) s = -s;
  }
  const mpz_class ca = content(a), cb = content(b);
  divide_exact(a, ca);
  divide_exact(b, cb);
  const mpz_class t = pow(ca, static_cast<unsigned long>(db)) * pow(cb, static_cast<unsigned long>(da));

  mpz_class g = 1, h = 1;
  for (;;) {
    const int delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    ZPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
    if (b.empty()) return 0;
    const mpz_class div = g * pow(h, static_cast<unsigned long>(delta));
    divide_exact(b, div);
    g = a.back();
    // h = g^delta / h^{delta - 1}
    if (delta == 0) {
      // h unchanged
    } else {
      mpz_class num = pow(g, static_cast<unsigned long>(delta));
      mpz_class den = pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    da = degree(a);
    db = degree(b);
    if (db == 0) {
      // h = lc(b)^{deg a} / h^{deg a - 1}
      mpz_class num = pow(b[0], static_cast<unsigned long>(da));
      mpz_class den = pow(h, static_cast<unsigned long>(da - 1));
      mpz_class res;
      mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * t * res;
    }
  }
}

}  // namespace cmnc
