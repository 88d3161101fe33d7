#pragma once

// Rigorous evaluation of q = e^{2 pi i tau} and of the Klein j-invariant
//   j = E4^3 / (q * P(q)^24),   P(q) = sum_k (-1)^k q^{k(3k-1)/2},
// at CM points in the fundamental domain. P(q) is eta(tau) / q^{1/24}.

#include <cstdint>

#include "cmnc/bigcomplex.hpp"
#include "cmnc/forms.hpp"

namespace cmnc {

struct JValue {
  BigComplex value;
  CMPoint tau;
  int terms_used = 0;  // number of E4 coefficients summed
};

// |err| <= 2^{-prec_bits} |q|. Throws domain unless tau is in F.
BigComplex eval_q(const CMPoint& tau, long prec_bits);

// err <= 2^{8 - prec_bits} max(1, |j|). Throws domain unless tau is in F.
JValue eval_j(const CMPoint& tau, long prec_bits);

// Reduces to F first; identical to eval_j on the reduced point.
JValue eval_j_any(const CMPoint& z, long prec_bits);

// Shorthand for eval_j(point_of_form(f)) on a reduced form.
JValue eval_j(const QForm& reduced, long prec_bits);

}  // namespace cmnc
