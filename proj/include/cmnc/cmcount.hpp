#pragma once

// C_eps(tau, Delta): the number of quadratic points of discriminant Delta
// strictly within eps of tau, computed exactly, and its upper bounds.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cmnc/disc.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/interval.hpp"

namespace cmnc {

class SpfTable;

struct EpsQuery {
  QuadPoint tau;  // in F
  mpq_class eps;  // 0 < eps < 1/2
  Discriminant disc;
};

// Throws invalid_argument for eps outside (0, 1/2) and domain when tau is not
// in F.
void validate(const EpsQuery& q);

struct EpsCountResult {
  std::int64_t exact_count = 0;
  double thm_bound = 0;             // rounded up; 0 when not requested
  std::optional<double> cor_bound;  // only for |Delta| >= 10^14
  std::pair<double, double> a_interval;
  std::vector<QForm> witnesses;
  bool report_only = false;  // eps >= 1/4: the bounds are not claimed there
};

// Strict |tau(a,b,c) - tau| < eps, decided in exact rational arithmetic.
bool within_eps(const QForm& f, const QuadPoint& tau, const mpq_class& eps);

// Enumerates a in I and b in the b-window (widened by one on each side; they
// are only necessary conditions) and tests each candidate exactly.
EpsCountResult exact_count_eps(const EpsQuery& q);

// exact_count_eps with thm_bound (and cor_bound when defined) filled in.
EpsCountResult exact_count_eps(const EpsQuery& q, const SpfTable& table);

// F (A s1/f |D|^{1/2} e^2 + B |D|^{1/2} e + 8 |D|^{1/4} / (sqrt3 - 1)^{1/2} s0 e + 2)
// with A = (48 + 16 sqrt3)/3, B = (12 + 4 sqrt3)/3, s_i = sigma_i(f~).
Interval thm_bound_eps(const EpsQuery& q, std::int64_t f_val, mpfr_prec_t prec = 128);

// F (46.488 |D|^{1/2} e^2 loglog|D|^{1/2} + 7.752 |D|^{1/2} e + 2).
// Throws hypothesis_not_met for |Delta| < 10^14.
Interval cor_bound_eps(const EpsQuery& q, std::int64_t f_val, mpfr_prec_t prec = 128);

struct ResidueAudit {
  std::int64_t class_count = 0;
  std::int64_t modulus = 1;  // a / gcd2(a, Delta)
  std::int64_t bound = 0;    // 2^{omega(a / gcd(a, Delta)) + 1}
};

// Residues b mod a with b^2 = Delta (mod a), grouped mod a / gcd2(a, Delta).
ResidueAudit residue_class_audit(std::int64_t a, std::int64_t delta);

// #{n in [lo, hi] : n = r (mod m)}, lo <= hi, m >= 1.
std::int64_t count_in_interval(const mpq_class& lo, const mpq_class& hi, std::int64_t m,
                               std::int64_t r);

// Divisor-function estimates used for |Delta| >= 10^14:
//   sigma0(f~) <= |Delta|^{0.192},  sigma1(f~)/f~ <= 1.842 loglog |Delta|^{1/2}.
struct DivisorEstimate {
  bool sigma0_ok = false;
  bool sigma1_ok = false;
};
DivisorEstimate check_divisor_estimates(const Discriminant& d);

// Random point of F with rational coordinates; `u` are three uniforms in [0,1).
QuadPoint sample_fundamental_point(double u0, double u1, double u2);

}  // namespace cmnc
