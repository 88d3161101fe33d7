#pragma once

// Hilbert class polynomials H_Delta in Z[X], built from numerical j-values of
// the reduced forms and certified by rounding, plus exact norms and
// resultants.

#include <gmpxx.h>

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "cmnc/disc.hpp"
#include "cmnc/intpoly.hpp"

namespace cmnc {

struct ClassPolyCert {
  long prec_bits_used = 0;
  double max_rounding_residual = 0;  // max over coefficients of |c - round(c)| + err
  double max_imag_residual = 0;      // max over real roots of |Im j| + err
};

struct ClassPolynomial {
  Discriminant disc;
  ZPoly coeffs;  // constant term first, monic
  ClassPolyCert cert;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  // "X^2 + 191025*X - 121287375"
  std::string to_string() const;
};

// Throws precision_exhausted when certification fails after 4 doublings.
ClassPolynomial hilbert_poly(const Discriminant& d);

// One construction attempt at `bits` working bits, without the second
// recompute. Exposed for tests.
ClassPolynomial hilbert_poly_at(const Discriminant& d, long bits);

// ceil(pi sqrt|Delta| sum 1/a / log 2) + 10 C(Delta) + 64
long hilbert_initial_bits(const Discriminant& d);

mpz_class eval_at_integer(const ClassPolynomial& h, const mpz_class& m);

struct NormResult {
  enum class Mode { exact_rational_alpha, pair_product };
  double log_abs = 0;
  std::optional<mpz_class> exact;
  Mode mode = Mode::exact_rational_alpha;
};

const char* to_string(NormResult::Mode m);

class ClassPolyCache;

// |H_Delta(alpha)|; throws zero_norm when alpha is a root.
NormResult norm_diff_rational_alpha(const Discriminant& d, const mpz_class& alpha,
                                    ClassPolyCache* cache = nullptr);

// log |Res(H_d1, H_d2)| = sum_{i,j} log |alpha_i - x_j|, cross-checked
// against the floating sum to 1e-6 relative. Throws equal_discriminants.
NormResult pair_product_log(const Discriminant& d1, const Discriminant& d2,
                            ClassPolyCache* cache = nullptr);

// Natural log of |v| for a nonzero integer of any size.
double log_abs(const mpz_class& v);

/// In-memory memo in front of an optional on-disk directory. File format:
///   HCP v1
///   disc=<Delta>
///   degree=<n>
///   prec_bits=<p>
///   sha256=<hex of lines 6..end>
///   <c_0>
///   ...
///   <c_n>
/// Thread-safe; files are written to <name>.tmp and renamed.
class ClassPolyCache {
 public:
  // Empty dir disables disk storage. The CMNC_CACHE environment variable,
  // when set, overrides dir.
  explicit ClassPolyCache(std::filesystem::path dir = {});

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path file_for(const Discriminant& d) const;

  // nullopt on a miss. Throws corrupt_cache on checksum or format mismatch.
  std::optional<ClassPolynomial> get(const Discriminant& d);
  void put(const ClassPolynomial& h);
  // A corrupt entry is recomputed and overwritten.
  ClassPolynomial get_or_compute(const Discriminant& d);

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::int64_t, ClassPolynomial> memo_;
};

std::string serialize_cache_entry(const ClassPolynomial& h);
// Throws corrupt_cache.
ClassPolynomial parse_cache_entry(const std::string& text);

std::string sha256_hex(const std::string& data);

}  // namespace cmnc
