#pragma once

// Upper bounds for h(x - alpha), the epsilon choices behind them, the main
// norm inequality as a per-discriminant report, and the audit of the
// decimal constants used along the way.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmnc/disc.hpp"
#include "cmnc/interval.hpp"

namespace cmnc {

class ClassPolyCache;
class SpfTable;

// part1: alpha of discriminant other than -3, -4; part2: alpha = 1728;
// part3: alpha = 0.
enum class Case { part1, part2, part3 };

const char* to_string(Case c);
// "1", "2", "3", "part1", ... Throws invalid_argument.
Case parse_case(const std::string& s);

struct CertReport {
  Case kase = Case::part1;
  std::int64_t disc = 0;
  std::int64_t disc_alpha = 0;
  double X = 0;        // |Delta|
  double Y = 0;        // max{pi X^{1/2} / C(Delta), 3/sqrt5 log X - 9.78}
  double A = 0;        // F log max{|Delta|, |Delta_alpha|}
  double C_const = 0;  // the additive constant C of the case
  mpq_class eps_used = 0;
  std::map<std::string, double> terms;  // left-hand terms of the main inequality
  double norm_log = 0;
  double threshold = 0;
  bool hypothesis_ok = false;
  double margin = 0;  // norm_log - threshold
  std::vector<std::string> labels;  // "empirical", "pair-product", ...
  std::string error;                // non-empty for an item that failed inline

  friend bool operator==(const CertReport&, const CertReport&) = default;
};

struct Bound41 {
  double value = 0;        // right side without the norm term
  double count_term = 0;   // the C_eps contribution
  std::int64_t d = 0;      // degree used in the denominators
  std::vector<std::int64_t> counts;  // C_eps(tau_k, Delta) per conjugate of alpha
  bool d_is_proxy = false; // C(Delta_alpha) C(Delta) in place of the unknown d
};

// Part 1 needs Delta_alpha not in {-3, -4} and 0 < eps < min{1/(3|Da|^2), 1e-8};
// part 2 needs Delta_alpha = -4 and 0 < eps <= 7e-3. Throws
// hypothesis_not_met naming the violated condition.
Bound41 upper_bound_41(Case c, const Discriminant& d_alpha, const Discriminant& d,
                       const mpq_class& eps);

struct Bound42 {
  double value = 0;            // right side without the norm term
  double class_number = 0;     // C(Delta) used; the class-number bound unless given
  std::int64_t F = 0;
  double A = 0;
  std::vector<std::string> labels;
};

// |Delta| >= 10^14, else hypothesis_not_met. Without `class_number` the
// bound pi^{-1} |Delta|^{1/2} (2 + log |Delta|) stands in for C(Delta) and
// the result is labelled "bound-on-bound". Part 1 uses d = C(Da) C(Delta).
Bound42 upper_bound_42(Case c, const Discriminant& d_alpha, const Discriminant& d,
                       const SpfTable& table, std::optional<std::int64_t> class_number = {});

struct EpsChoice {
  mpq_class eps;  // rounded down
  Interval value;
  std::map<std::string, bool> side_conditions;
};

// Part 1: 0.0003 d / (A C(Da) |Delta|^{1/2} |Da|^2) with d = C(Da) C(Delta);
// part 2: 0.3 C(Delta) / (A |Delta|^{1/2}). C(Delta) is the class-number
// bound. Throws hypothesis_not_met below 10^14 or when a side condition fails,
// invalid_argument for part 3.
EpsChoice epsilon_choice(Case c, const Discriminant& d_alpha, const Discriminant& d,
                         const SpfTable& table);

// One report for the pair (alpha, x). Throws same_modulus when Delta equals
// Delta_alpha, invalid_argument when the case does not match Delta_alpha, and
// zero_norm if the norm vanishes.
CertReport main_theorem_check(Case c, const Discriminant& d_alpha, const Discriminant& d,
                              ClassPolyCache* cache = nullptr);

// Reports for every valid Delta in [lo, hi] (lo <= hi < 0), in increasing
// |Delta|. Items that throw are emitted with `error` set. `threads` > 1
// computes in parallel; the emission order is unchanged.
void certify_range(Case c, const Discriminant& d_alpha, std::int64_t lo, std::int64_t hi,
                   const std::function<void(const CertReport&)>& sink, ClassPolyCache* cache = nullptr,
                   unsigned threads = 1);

// sum_k log |j(tau_k) - alpha| over the reduced forms of Delta, from
// floating j-values at `prec_bits`; `err` receives an absolute error bound.
double norm_log_estimate(const Discriminant& d, const mpz_class& alpha, long prec_bits, double& err);

struct AuditCheck {
  std::string id;
  std::string where;     // which argument the claim belongs to
  std::string claim;     // the inequality as printed
  Interval value;        // enclosure of the computed side
  std::string relation;  // "<", "<=", ">", ">="
  std::string bound;     // decimal right-hand side
  bool pass = false;
  bool diagnostic = false;  // informational row, not a claim
  std::string note;
};

struct ConstantsAudit {
  std::vector<AuditCheck> checks;

  std::size_t claims() const;
  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

ConstantsAudit constants_audit(mpfr_prec_t prec = 256);

// max over k <= kmax of log log N_k - log N_k / k, N_k the product of the
// first k primes, and the k where it is reached.
std::pair<Interval, int> primorial_c1(int kmax, mpfr_prec_t prec = 256);

}  // namespace cmnc
