#pragma once

// Primitive positive-definite binary quadratic forms (a, b, c), their CM
// points tau = (b + sqrt(Delta)) / (2a), and SL2(Z)-reduction to the
// fundamental domain F.
//
// F is the open triangle with vertices zeta_3, zeta_6, i*inf together with
// the arc [i, zeta_6] and the line [zeta_6, i*inf):
//   -1/2 < Re z <= 1/2,  |z| >= 1,  and Re z >= 0 when |z| = 1.
// A form is reduced iff its point lies in F.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "cmnc/bigcomplex.hpp"
#include "cmnc/disc.hpp"

namespace cmnc {

struct QForm {
  std::int64_t a = 1, b = 0, c = 1;

  // b^2 - 4ac, checked for overflow.
  std::int64_t discriminant() const;

  friend bool operator==(const QForm&, const QForm&) = default;
  friend auto operator<=>(const QForm&, const QForm&) = default;
};

// Throws invalid_argument unless a > 0, gcd(a,b,c) = 1 and b^2 - 4ac < 0.
void validate(const QForm& f);

/// [[a, b], [c, d]] acting by z -> (az + b) / (cz + d).
struct SL2Z {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static SL2Z identity() { return {}; }
  static SL2Z T(std::int64_t n) { return {1, n, 0, 1}; }
  static SL2Z S() { return {0, -1, 1, 0}; }

  friend SL2Z operator*(const SL2Z& x, const SL2Z& y);
  friend bool operator==(const SL2Z&, const SL2Z&) = default;
};

bool is_reduced(const QForm& f);

// Gauss reduction. Returns the reduced form and gamma with
// tau(reduced) = gamma . tau(f).
std::pair<QForm, SL2Z> reduce_form(const QForm& f);

// All reduced primitive forms of discriminant Delta, sorted by (a, b).
std::vector<QForm> enumerate_reduced(const Discriminant& d);

// Same as enumerate_reduced(d).size() without materializing the list.
std::int64_t class_number(const Discriminant& d);

/// A point x + i*y of the upper half plane with x and y^2 rational.
/// CM points and decimal inputs are of this shape, and the shape is closed
/// under SL2(Z), so every comparison on it is exact.
struct QuadPoint {
  mpq_class re;
  mpq_class im_sq;  // > 0

  friend bool operator==(const QuadPoint&, const QuadPoint&) = default;
};

struct CMPoint {
  QForm form;
  QuadPoint z;  // re = b / 2a, im^2 = |Delta| / 4a^2

  const mpq_class& re() const { return z.re; }
  const mpq_class& im_sq() const { return z.im_sq; }
  std::int64_t disc() const { return form.discriminant(); }
};

CMPoint point_of_form(const QForm& f);

QuadPoint apply(const SL2Z& g, const QuadPoint& z);
bool in_fundamental_domain(const QuadPoint& z);

// Exact reduction; returns z' in F and gamma with z' = gamma . z.
std::pair<QuadPoint, SL2Z> reduce_to_fundamental(const QuadPoint& z);
// For CM points this is reduce_form on the underlying form.
std::pair<CMPoint, SL2Z> reduce_to_fundamental(const CMPoint& p);

// Floating reduction of a ball. Throws undecidable_boundary when the ball
// straddles a boundary of F (or a reduction step) and domain when Im z <= 0.
std::pair<BigComplex, SL2Z> reduce_to_fundamental(const BigComplex& z);

// Midpoint of a QuadPoint as a ball of the given precision.
BigComplex to_ball(const QuadPoint& z, mpfr_prec_t prec);

}  // namespace cmnc
