#include <string>
#include <vector>

#include "cmnc/certify.hpp"
#include "cmnc/error.hpp"

namespace cmnc {

namespace {

// Exact rational value of a decimal literal such as "-0.1908".
mpq_class q_dec(const std::string& s) {
  std::string digits;
  long scale = 0;
  bool after = false;
  for (char ch : s) {
    if (ch == '.') {
      after = true;
    } else {
      digits.push_back(ch);
      if (after) ++scale;
    }
  }
  mpz_class den = 1;
  for (long i = 0; i < scale; ++i) den *= 10;
  mpq_class r(mpz_class(digits, 10), den);
  r.canonicalize();
  return r;
}

std::vector<long> first_primes(int k) {
  std::vector<long> ps;
  long limit = 64;
  while (static_cast<int>(ps.size()) < k) {
    limit *= 2;
    ps.clear();
    std::vector<bool> comp(limit + 1, false);
    for (long i = 2; i <= limit && static_cast<int>(ps.size()) < k; ++i) {
      if (comp[i]) continue;
      ps.push_back(i);
      for (long j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  return ps;
}

class Auditor {
 public:
  explicit Auditor(mpfr_prec_t p) : p_(p) {}

  Interval n(long v) const { return Interval(p_, v); }
  Interval d(const std::string& s) const { return Interval::from_decimal(s, p_); }
  Interval pi() const { return Interval::pi(p_); }

  void check(const std::string& id, const std::string& where, const std::string& claim, const Interval& v,
             const std::string& rel, const std::string& bound, const std::string& note = {}) {
    const Interval b = d(bound);
    bool pass = false;
    if (rel == "<") pass = v.certainly_lt(b);
    else if (rel == "<=") pass = v.certainly_le(b);
    else if (rel == ">") pass = v.certainly_gt(b);
    else if (rel == ">=") pass = v.certainly_ge(b);
    else throw Error(Errc::invalid_argument, "unknown relation " + rel);
    out_.checks.push_back({id, where, claim, v, rel, bound, pass, false, note});
  }

  // Exact decimal identity lhs = rhs.
  void exact(const std::string& id, const std::string& where, const std::string& claim, const mpq_class& lhs,
             const std::string& rhs) {
    out_.checks.push_back(
        {id, where, claim, Interval::from_q(lhs, p_), "=", rhs, lhs == q_dec(rhs), false, {}});
  }

  void diagnostic(const std::string& id, const std::string& where, const std::string& claim, const Interval& v,
                  const std::string& rel, const std::string& bound, const std::string& note) {
    check(id, where, claim, v, rel, bound, note);
    out_.checks.back().diagnostic = true;
  }

  ConstantsAudit take() { return std::move(out_); }

 private:
  mpfr_prec_t p_;
  ConstantsAudit out_;
};

}  // namespace

std::size_t ConstantsAudit::claims() const {
  std::size_t k = 0;
  for (const auto& c : checks) k += c.diagnostic ? 0 : 1;
  return k;
}

std::size_t ConstantsAudit::failures() const {
  std::size_t k = 0;
  for (const auto& c : checks) k += (!c.diagnostic && !c.pass) ? 1 : 0;
  return k;
}

std::pair<Interval, int> primorial_c1(int kmax, mpfr_prec_t prec) {
  const auto ps = first_primes(kmax);
  Interval log_n(prec, 0);
  Interval best(prec, -1000);
  int arg = 0;
  double best_mid = -1e300;
  for (int k = 1; k <= kmax; ++k) {
    log_n = log_n + log(Interval(prec, ps[k - 1]));
    if (k < 2) continue;  // log log 2 < 0
    const Interval v = log(log_n) - log_n / k;
    if (v.mid_double() > best_mid) {
      best_mid = v.mid_double();
      arg = k;
    }
    best = max(best, v);
  }
  return {best, arg};
}

ConstantsAudit constants_audit(mpfr_prec_t prec) {
  Auditor a(prec);
  const Interval pi = a.pi();
  const Interval ln2 = log(a.n(2));
  const Interval s3 = sqrt(a.n(3));
  const Interval s5 = sqrt(a.n(5));
  const Interval slope = 3 / s5;  // 3/sqrt5
  const Interval c1 = a.d("1.1713142");
  const Interval x15 = a.d("1e15");
  const Interval t15 = log(x15);
  const Interval t16 = log(a.d("1e16"));
  const Interval t14 = log(a.d("1e14"));

  // --- the counting corollary -------------------------------------------
  a.check("cor_const_quadratic", "counting corollary", "(48+16 sqrt3)/3 * 1.842 <= 46.488",
          (48 + 16 * s3) / 3 * a.d("1.842"), "<=", "46.488");
  a.exact("cor_exponent", "counting corollary", "1/4 + 0.192 = 0.442", q_dec("0.25") + q_dec("0.192"), "0.442");
  a.exact("cor_exponent_14", "counting corollary", "14 * (1/2 - 0.442) = 0.812",
          14 * (q_dec("0.5") - q_dec("0.442")), "0.812");
  a.check("cor_const_sigma0", "counting corollary", "8 / ((sqrt3 - 1)^{1/2} 10^{0.812}) <= 1.442",
          8 / (sqrt(s3 - 1) * pow(a.n(10), a.d("0.812"))), "<=", "1.442");
  a.check("cor_const_linear", "counting corollary", "(12 + 4 sqrt3)/3 + 1.442 <= 7.752",
          (12 + 4 * s3) / 3 + a.d("1.442"), "<=", "7.752");

  // --- F at 10^14 ---------------------------------------------------------
  a.check("F_256", "F at |Delta| = 10^14", "2*3*5*7*11*13*17*19 <= (10^14)^{1/2}, so F >= 256", a.n(9699690),
          "<=", "10000000");
  a.check("F_loglog", "F at |Delta| = 10^14", "256 >= 18.54 log log (10^14)^{1/2}",
          a.d("18.54") * log(log(a.d("1e7"))), "<=", "256");

  // --- epsilon choice, part 1 -------------------------------------------
  a.check("eps1_third", "epsilon, part 1", "(6 + 3 log 10^14) / (10000 pi log 10^14) / 256 <= 1/3",
          (6 + 3 * t14) / (10000 * pi * t14) / 256, "<=", "0.333333333333333333");
  a.check("eps1_1e-8", "epsilon, part 1", "(6 + 3 log 10^14) / (490000 pi log 10^14) / 256 <= 1e-8",
          (6 + 3 * t14) / (490000 * pi * t14) / 256, "<=", "1e-8");
  a.exact("eps1_square", "epsilon, part 1", "4 * 0.0003^2 = 36e-8", 4 * q_dec("0.0003") * q_dec("0.0003"),
          "0.00000036");
  a.check("eps1_quadratic_term", "epsilon, part 1",
          "36e-8 * 48.488 (2 + log 10^14) / (18.54 pi log 10^14) / 7^4 <= 0.0005",
          a.d("36e-8") * a.d("48.488") * (2 + t14) / (a.d("18.54") * pi * t14) / 2401, "<=", "0.0005",
          "evaluated with 48.488 as printed; the preceding line of the chain has 46.488");
  a.exact("eps1_31008", "epsilon, part 1", "4 * 7.752 = 31.008", 4 * q_dec("7.752"), "31.008");
  a.check("eps1_linear_term", "epsilon, part 1", "0.0003 * 31.008 / 7^2 <= 0.0005",
          a.d("0.0003") * a.d("31.008") / 49, "<=", "0.0005");
  a.check("eps1_033", "epsilon, part 1", "0.001 + log(10000/3) - 7.783 <= 0.33",
          a.d("0.001") + log(a.n(10000) / 3) - a.d("7.783"), "<=", "0.33");

  // --- separation constants in the counting bound -------------------------
  a.check("sep_log2400", "counting bound, part 1", "log 2400 >= 7.783", log(a.n(2400)), ">=", "7.783");
  a.check("sep_5e-7", "counting bound, part 1", "2400/49 * 1e-8 < 5e-7", a.n(2400) / 49 * a.d("1e-8"), "<",
          "5e-7");
  a.check("sep_1410", "counting bound, part 1", "2400/49 <= 1410", a.n(2400) / 49, "<=", "1410");
  a.check("sep_e26pi", "counting bound, part 1", "0.4 e^{2.6 pi} >= 1410", a.d("0.4") * exp(a.d("2.6") * pi),
          ">=", "1410");
  a.check("sep_log20000", "counting bound, part 2", "log 20000 >= 9.9", log(a.n(20000)), ">=", "9.9");
  a.check("sep_eps_inv_sq", "counting bound, part 2", "(7e-3)^{-2} > 20000", 1 / (a.d("7e-3") * a.d("7e-3")),
          ">", "20000");

  // --- epsilon choice, part 2 -------------------------------------------
  a.check("eps2_5e-4", "epsilon, part 2", "0.3 (2 + log 10^14) / (pi log 10^14) / 256 <= 5e-4",
          a.d("0.3") * (2 + t14) / (pi * t14) / 256, "<=", "5e-4");
  const Interval chain284 = 2 * a.d("0.3") * a.d("7.752") - 2 * log(a.d("0.3")) - a.d("9.9");
  a.check("eps2_284", "epsilon, part 2", "2 * 0.3 * 7.752 - 2 log 0.3 - 9.9 <= -2.84", chain284, "<=", "-2.84");
  a.check("eps2_268", "epsilon, part 2",
          "2 * 46.488 * 0.3^2 (2 + log 10^14) / (18.54 pi log 10^14) - 2.84 <= -2.68",
          2 * a.d("46.488") * a.d("0.09") * (2 + t14) / (a.d("18.54") * pi * t14) - a.d("2.84"), "<=", "-2.68");

  // --- part 1 -----------------------------------------------------------
  const auto [c1_val, c1_arg] = primorial_c1(10000, prec);
  a.check("c1", "part 1, log A", "max_k (log log N_k - log N_k / k) < 1.1713142", c1_val, "<", "1.1713142",
          "primorials N_k, k <= 10000; maximum at k = " + std::to_string(c1_arg));
  a.check("C_1_04", "part 1, main inequality", "0.33 + log 2 + 0.01 <= 1.04", a.d("0.33") + ln2 + a.d("0.01"),
          "<=", "1.04");
  const Interval k15 = log(t15) - c1 - ln2;
  const Interval u0 = ln2 / 2 / k15 + log(t15) / t15 - a.d("0.5");
  a.check("u0_decreasing", "part 1, first term", "u0' < 0 for X >= 10^15: 1 - log log 10^15 < 0",
          1 - log(t15), "<", "0",
          "u0' = -(log2/2) / (t (log t - c1 - log2)^2) + (1 - log t) / t^2 with t = log X; both parts "
          "are negative once log t > 1 and log t > c1 + log 2");
  a.check("u0_pole", "part 1, first term", "log log 10^15 - c1 - log 2 > 0", k15, ">", "0");
  a.check("u0_1e15", "part 1, first term", "u0(10^15) <= -0.1908", u0, "<=", "-0.1908");
  a.check("first_term_1", "part 1, first term", "8/pi * 10^{15 * (-0.1908)} <= 0.0035",
          8 / pi * pow(a.n(10), a.d("-2.862")), "<=", "0.0035");
  const Interval c_floor = 4 * log(a.n(7)) + log(a.n(7)) / (4 * s5) - a.d("5.93") + a.d("1.04");
  a.check("C_311", "part 1, second term", "4 log 7 + log 7 / (4 sqrt5) - 5.93 + 1.04 > 3.11", c_floor, ">",
          "3.11");
  a.check("x0_933", "part 1, second term", "3 * 3.11 >= 5/3", 3 * a.d("3.11"), ">=", "1.666666666666666667");
  {
    // g(x0) = log 3 + log C - 0.8 C on cells of width 1/32 covering [3.11, 100]
    Interval worst(prec, -1000);
    const Interval lo = a.d("3.11");
    for (int k = 0;; ++k) {
      const Interval l = lo + Interval(prec, k) / 32;
      if (l.lo_double() > 100) break;
      const Interval cell = Interval::hull(l.lo(), (l + Interval(prec, 1) / 32).hi());
      worst = max(worst, log(a.n(3)) + log(cell) - a.d("0.8") * cell);
    }
    a.check("g_x0", "part 1, second term", "log 3 + log C - 0.8 C < 0 for 3.11 <= C <= 100", worst, "<", "0",
            "interval enclosure over cells of width 1/32");
  }
  a.check("u1_decreasing", "part 1, second term", "u1' < 0 for X >= 10^10: 1 - log log 10^10 < 0",
          1 - log(log(a.d("1e10"))), "<", "0", "same two-part derivative as u0, with C >= 0");
  a.check("u2_decreasing", "part 1, second term", "u2 > 0 and decreasing for X >= 10^10",
          slope - a.d("9.78") / log(a.d("1e10")), ">", "0");
  const Interval u2 = 1 / (slope - a.d("9.78") / t15);
  a.check("second_term_1", "part 1, second term",
          "((log2/2) / (log log 10^15 - 1.1713142 - log 2) + 0.6) u2(10^15) < 0.7621",
          (ln2 / 2 / k15 + a.d("0.6")) * u2, "<", "0.7621");
  const Interval y0 = slope * t15 - a.d("9.78");
  a.check("third_term_mono", "third term", "Y >= 3/sqrt5 log 10^15 - 9.78 > pi e", y0 - pi * exp(a.n(1)), ">",
          "0", "log(Y/pi)/Y decreases for Y > pi e");
  a.check("third_term", "third term", "log(Y/pi)/Y < 0.0672 at Y = 3/sqrt5 log 10^15 - 9.78",
          log(y0 / pi) / y0, "<", "0.0672");
  a.exact("margin_1", "part 1, summing up", "1 - (0.0035 + 0.7621 + 0.0672) = 0.1672",
          1 - (q_dec("0.0035") + q_dec("0.7621") + q_dec("0.0672")), "0.1672");
  a.check("margin_1_half", "part 1, summing up", "0.1672 pi >= 1/2", a.d("0.1672") * pi, ">=", "0.5");

  // --- part 2 -----------------------------------------------------------
  a.exact("C_part2_const", "part 2", "-2.68 + 0.01 = -2.67", q_dec("-2.68") + q_dec("0.01"), "-2.67");
  const Interval c2 = log(a.n(3456)) - a.d("2.67");
  a.check("C_part2", "part 2", "h(1728) + log 2 - 2.67 = log 3456 - 2.67 > 0",
          log(a.n(1728)) + ln2 - a.d("2.67"), ">", "0");
  const Interval ax = pow(a.n(10), 15 * u0);
  a.check("AX_0014", "part 3", "A X^{-1/2} <= 10^{15 u0(10^15)} < 0.0014", ax, "<", "0.0014");
  a.check("first_term_2", "part 2", "4 A / (pi X^{1/2}) < 4 * 0.0014 / pi < 0.0018", 4 * a.d("0.0014") / pi, "<",
          "0.0018");
  {
    // On [10^15, 10^16] the root is below the ninth primorial, so F = 256.
    const Interval seg = (2 * log(256 * t15) + c2) / (slope * t15 - a.d("9.78"));
    a.check("F_segment", "part 2, second term", "ninth primorial > (10^16)^{1/2}", a.n(223092870), ">",
            "100000000");
    a.check("second_term_2_mono", "part 2, second term",
            "2 log(256 log X) + C > 2 at X = 10^15 (the quotient decreases)", 2 * log(256 * t15) + c2, ">", "2");
    const Interval robin16 = (2 * (ln2 / 2 * t16 / (log(t16) - c1 - ln2) + log(t16)) + c2) /
                             (slope * t16 - a.d("9.78"));
    a.check("second_term_2", "part 2, second term",
            "(2 log A + C) / (3/sqrt5 log X - 9.78) < 0.7337: max of F = 256 on [10^15, 10^16] and the "
            "c1 bound from 10^16",
            max(seg, robin16), "<", "0.7337",
            "the c1 bound alone gives 0.73396 at 10^15; exact F on the first decade closes the gap");
    const Interval robin15 = (2 * (ln2 / 2 * t15 / k15 + log(t15)) + c2) / (slope * t15 - a.d("9.78"));
    a.diagnostic("second_term_2_c1_only", "part 2, second term",
                 "c1 bound alone at X = 10^15 < 0.7337", robin15, "<", "0.7337",
                 "not a claim: shows why the two-segment argument is needed");
  }
  a.exact("margin_2", "part 2", "1 - (0.0018 + 0.7337 + 0.0672) = 0.1973",
          1 - (q_dec("0.0018") + q_dec("0.7337") + q_dec("0.0672")), "0.1973");
  a.check("margin_2_half", "part 2", "0.1973 pi >= 1/2", a.d("0.1973") * pi, ">=", "0.5");

  // --- part 3 -----------------------------------------------------------
  a.exact("part3_const", "part 3", "-3.77 + 0.01 = -3.76", q_dec("-3.77") + q_dec("0.01"), "-3.76");
  a.check("part3_logA", "part 3", "log 10^15 > 30", t15, ">", "30");
  a.check("part3_positive", "part 3", "3 log 30 - 3.76 > 0", 3 * log(a.n(30)) - a.d("3.76"), ">", "0");
  a.check("second_term_3", "part 3", "(3 log A - 3.76) / (3/sqrt5 log X - 9.78) < 0.7734 at 10^15",
          (3 * (ln2 / 2 * t15 / k15 + log(t15)) - a.d("3.76")) / (slope * t15 - a.d("9.78")), "<", "0.7734");
  a.check("margin_3", "part 3", "1 - (12/pi * 0.0014 + 0.7734 + 3 * 0.0672) > 0.019",
          1 - (12 / pi * a.d("0.0014") + a.d("0.7734") + 3 * a.d("0.0672")), ">", "0.019");
  a.check("margin_3_twentieth", "part 3", "0.019 pi >= 1/20", a.d("0.019") * pi, ">=", "0.05");

  a.diagnostic("u0_value", "part 1, first term", "u0(10^15) (value)", u0, "<", "0", "");
  return a.take();
}

}  // namespace cmnc
