#pragma once

// Weil heights of singular moduli and of x - alpha, the known lower bounds
// for them, and checks of the separation inequalities |x - alpha| >= ...

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "cmnc/bigcomplex.hpp"
#include "cmnc/disc.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/interval.hpp"

namespace cmnc {

class ClassPolyCache;

struct HeightReport {
  Discriminant disc;
  double h = 0;
  std::vector<std::pair<QForm, double>> per_conjugate;  // log+ term per form
  double err = 0;  // |h - true height| <= err
};

// h(x) = (1/C) sum_k log+ |x_k| over the conjugates j(tau(a,b,c)).
HeightReport height_singular(const Discriminant& d, long prec_bits = 128);

struct HeightDiffReport {
  HeightReport direct;     // (1/d) sum log+ |x_k - alpha|
  double inverse_sum = 0;  // (1/d) sum log+ |x_k - alpha|^{-1}
  double norm_log = 0;     // (1/d) log |N(x - alpha)|
  double inverse_form = 0; // inverse_sum + norm_log
  double err = 0;
};

// Both sides of h(x - alpha) = h((x - alpha)^{-1}) for rational alpha, with
// d = C(Delta). Throws zero_norm when alpha is a root of H_Delta.
HeightDiffReport height_diff_rational(const Discriminant& d, const mpz_class& alpha,
                                      long prec_bits = 128, ClassPolyCache* cache = nullptr);

// (pi |Delta|^{1/2} - 0.01) / C(Delta); hypothesis_not_met for |Delta| < 16.
Interval lower_bound_51_interval(const Discriminant& d);
double lower_bound_51(const Discriminant& d);  // rounded up

// max(3/sqrt5 log|Delta| - 9.79, 1/(4 sqrt5) log|Delta| - 5.93)
Interval lower_bound_52a_interval(const Discriminant& d);
Interval lower_bound_52b_interval(const Discriminant& d);
double lower_bound_52(const Discriminant& d);  // rounded up

struct DiffLowerBound {
  double value = 0;
  double h_alpha = 0;
  bool used_51 = false;  // false when |Delta| < 16 leaves only the log bounds
};

// max(bounds on h(x)) - h(alpha) - log 2.
DiffLowerBound diff_height_lower(const Discriminant& d, const Discriminant& d_alpha);

/// Numerical conjugates of one discriminant: reduced forms, their points
/// and j-values both as balls and as long-double copies for fast scans.
struct ConjugateSet {
  Discriminant disc;
  std::vector<QForm> forms;
  std::vector<BigComplex> j;
  std::vector<std::complex<long double>> j_ld;
  std::vector<std::complex<double>> tau;  // points in F
  long prec_bits = 0;
};

ConjugateSet conjugates(const Discriminant& d, long prec_bits = 128);

struct BoundCheck {
  bool applicable = false;
  std::int64_t pairs = 0;
  std::int64_t violations = 0;
  double worst_margin = HUGE_VAL;  // min over pairs of log(|x - alpha| / bound)
};

struct SeparationReport {
  std::int64_t delta = 0, delta_alpha = 0;
  double min_distance = HUGE_VAL;  // min |x - alpha|
  BoundCheck thm52;      // 800 max{|D|, |Da|}^{-4}
  BoundCheck lemma53a;   // alpha = 1728: 20000 min{|z - i|, 0.01}^2
  BoundCheck lemma53b;   // alpha = 1728: 2000 |D|^{-2}
  BoundCheck lemma51;    // report-only, z' = nearest image of z to tau
  std::int64_t ball_fallbacks = 0;
  std::int64_t undecided = 0;
};

// Throws equal_discriminants when x.disc == alpha.disc.
SeparationReport separation_audit(const ConjugateSet& x, const ConjugateSet& alpha,
                                  bool with_lemma51 = true);
SeparationReport separation_audit(const Discriminant& d, const Discriminant& d_alpha,
                                  long prec_bits = 128);

// log+ |v| for a ball, bracketed: returns midpoint, adds half-width to err.
double log_plus(const BigComplex& v, double& err);

}  // namespace cmnc
