#pragma once

// Dense integer polynomials, constant term first.

#include <gmpxx.h>

#include <vector>

namespace cmnc {

using ZPoly = std::vector<mpz_class>;

// Drops leading zeros. The zero polynomial is the empty vector.
void normalize(ZPoly& p);
int degree(const ZPoly& p);  // -1 for zero

mpz_class horner(const ZPoly& p, const mpz_class& x);
ZPoly multiply(const ZPoly& a, const ZPoly& b);

// Res(a, b) by the subresultant PRS (Cohen, Alg. 3.3.7). Zero if either
// polynomial is zero.
mpz_class resultant(ZPoly a, ZPoly b);

}  // namespace cmnc
