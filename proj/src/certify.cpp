#include "cmnc/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cmnc/classpoly.hpp"
#include "cmnc/cmcount.hpp"
#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/heights.hpp"
#include "cmnc/intarith.hpp"
#include "cmnc/jeval.hpp"

namespace cmnc {

namespace {

constexpr mpfr_prec_t kP = 128;

Interval iv(std::int64_t v) { return Interval(kP, v); }
Interval dec(const char* s) { return Interval::from_decimal(s, kP); }

double log_q(const mpq_class& q) { return log_abs(q.get_num()) - log_abs(q.get_den()); }

mpq_class q_floor(const Interval& v) {
  mpq_class r;
  mpfr_get_q(r.get_mpq_t(), v.lo().get());
  return r;
}

[[noreturn]] void unmet(const std::string& why) { throw Error(Errc::hypothesis_not_met, why); }

void check_case(Case c, const Discriminant& d_alpha) {
  const std::int64_t da = d_alpha.value();
  if (c == Case::part1 && (da == -3 || da == -4)) {
    throw Error(Errc::invalid_argument, "part 1 needs Delta_alpha other than -3, -4");
  }
  if (c == Case::part2 && da != -4) throw Error(Errc::invalid_argument, "part 2 is alpha = 1728 (Delta_alpha = -4)");
  if (c == Case::part3 && da != -3) throw Error(Errc::invalid_argument, "part 3 is alpha = 0 (Delta_alpha = -3)");
}

// pi^{-1} |Delta|^{1/2} (2 + log |Delta|)
Interval class_number_bound(const Interval& x) {
  return sqrt(x) * (2 + log(x)) / Interval::pi(kP);
}

std::int64_t f_small(const Discriminant& d) {
  const SpfTable t(std::max<std::uint64_t>(2, isqrt(d.abs())));
  return f_of_disc(d, t);
}

}  // namespace

const char* to_string(Case c) {
  switch (c) {
    case Case::part1: return "part1";
    case Case::part2: return "part2";
    case Case::part3: return "part3";
  }
  return "?";
}

Case parse_case(const std::string& s) {
  if (s == "1" || s == "part1") return Case::part1;
  if (s == "2" || s == "part2") return Case::part2;
  if (s == "3" || s == "part3") return Case::part3;
  throw Error(Errc::invalid_argument, "case must be 1, 2 or 3, got '" + s + "'");
}

Bound41 upper_bound_41(Case c, const Discriminant& d_alpha, const Discriminant& d, const mpq_class& eps) {
  if (c == Case::part3) throw Error(Errc::invalid_argument, "the counting bound has parts 1 and 2 only");
  if (eps <= 0) unmet("eps > 0");
  const mpz_class da(static_cast<long>(d_alpha.abs()));
  if (c == Case::part1) {
    if (d_alpha.value() == -3 || d_alpha.value() == -4) unmet("tau != i, zeta_6 (Delta_alpha not in {-3, -4})");
    if (eps >= mpq_class(1, 3 * da * da)) unmet("eps < 1/(3 |Delta_alpha|^2)");
    if (eps >= mpq_class(1, 100000000)) unmet("eps < 10^-8");
  } else {
    if (d_alpha.value() != -4) unmet("tau = i (Delta_alpha = -4)");
    if (eps > mpq_class(7, 1000)) unmet("eps <= 7e-3");
  }

  Bound41 out;
  const auto alpha_forms = enumerate_reduced(d_alpha);
  const std::int64_t cd = class_number(d);
  const std::int64_t ca = static_cast<std::int64_t>(alpha_forms.size());
  std::int64_t total = 0;
  for (const auto& f : alpha_forms) {
    const EpsQuery q{point_of_form(f).z, eps, d};
    out.counts.push_back(exact_count_eps(q).exact_count);
    total += out.counts.back();
  }
  const double log_eps_inv = -log_q(eps);
  if (c == Case::part1) {
    out.d = ca == 1 ? cd : ca * cd;
    out.d_is_proxy = ca != 1;
    const double lmax = std::log(static_cast<double>(std::max(d.abs(), d_alpha.abs())));
    out.count_term = 4.0 * static_cast<double>(total) / static_cast<double>(out.d) * lmax;
    out.value = out.count_term + log_eps_inv + 2 * std::log(static_cast<double>(d_alpha.abs())) - 7.783;
  } else {
    out.d = cd;
    out.count_term = 2.0 * static_cast<double>(total) / static_cast<double>(cd) *
                     std::log(static_cast<double>(d.abs()));
    out.value = out.count_term + 2 * log_eps_inv - 9.9;
  }
  return out;
}

Bound42 upper_bound_42(Case c, const Discriminant& d_alpha, const Discriminant& d, const SpfTable& table,
                       std::optional<std::int64_t> class_number) {
  if (d.abs() < 100000000000000ULL) unmet("|Delta| >= 10^14");
  check_case(c, d_alpha);
  Bound42 out;
  out.F = f_of_disc(d, table);
  const Interval x = Interval::from_z(mpz_class(std::to_string(d.abs())), kP);
  const Interval xa = Interval::from_z(mpz_class(std::to_string(d_alpha.abs())), kP);
  const Interval a = iv(out.F) * log(max(x, xa));
  Interval cd = class_number ? iv(*class_number) : class_number_bound(x);
  if (!class_number) out.labels.push_back("bound-on-bound");
  const Interval sx = sqrt(x);
  Interval v(kP);
  switch (c) {
    case Case::part1: {
      const Interval ca = iv(cmnc::class_number(d_alpha));
      const Interval dd = ca * cd;
      v = 8 * a * ca / dd + log(a * ca * sx / dd) + 4 * log(xa) + dec("0.33");
      out.labels.push_back("d = C(Delta_alpha) C(Delta)");
      break;
    }
    case Case::part2: v = 4 * a / cd + 2 * log(a * sx / cd) - dec("2.68"); break;
    case Case::part3: v = 12 * a / cd + 3 * log(a * sx / cd) - dec("3.77"); break;
  }
  out.value = v.hi_double();
  out.class_number = cd.mid_double();
  out.A = a.mid_double();
  return out;
}

EpsChoice epsilon_choice(Case c, const Discriminant& d_alpha, const Discriminant& d, const SpfTable& table) {
  if (c == Case::part3) throw Error(Errc::invalid_argument, "no epsilon is chosen in part 3");
  if (d.abs() < 100000000000000ULL) unmet("|Delta| >= 10^14");
  check_case(c, d_alpha);
  const Interval x = Interval::from_z(mpz_class(std::to_string(d.abs())), kP);
  const Interval xa = Interval::from_z(mpz_class(std::to_string(d_alpha.abs())), kP);
  const Interval a = iv(f_of_disc(d, table)) * log(max(x, xa));
  const Interval cd = class_number_bound(x);
  EpsChoice out;
  if (c == Case::part1) {
    // d / C(Da) = C(Delta) at the extreme d = C(Da) C(Delta)
    out.value = dec("0.0003") * cd / (a * sqrt(x) * xa * xa);
    out.side_conditions["eps <= 1/(3|Delta_alpha|^2)"] = out.value.certainly_le(1 / (3 * xa * xa));
    out.side_conditions["eps <= 1e-8"] = out.value.certainly_le(dec("1e-8"));
  } else {
    out.value = dec("0.3") * cd / (a * sqrt(x));
    out.side_conditions["eps <= 7e-3"] = out.value.certainly_le(dec("7e-3"));
    out.side_conditions["eps <= 5e-4"] = out.value.certainly_le(dec("5e-4"));
  }
  for (const auto& [name, ok] : out.side_conditions) {
    if (!ok) unmet("epsilon side condition fails: " + name);
  }
  out.eps = q_floor(out.value);
  return out;
}

CertReport main_theorem_check(Case c, const Discriminant& d_alpha, const Discriminant& d,
                              ClassPolyCache* cache) {
  if (d == d_alpha) {
    throw Error(Errc::same_modulus, "x and alpha would share the discriminant " + std::to_string(d.value()));
  }
  check_case(c, d_alpha);

  CertReport r;
  r.kase = c;
  r.disc = d.value();
  r.disc_alpha = d_alpha.value();
  const std::int64_t cd = class_number(d);
  const std::int64_t ca = class_number(d_alpha);
  const double x = static_cast<double>(d.abs());
  const double xa = static_cast<double>(d_alpha.abs());
  r.X = x;

  if (ca == 1) {
    const ClassPolynomial ha = cache ? cache->get_or_compute(d_alpha) : hilbert_poly(d_alpha);
    const mpz_class alpha = -ha.coeffs[0];
    r.norm_log = norm_diff_rational_alpha(d, alpha, cache).log_abs;
    r.labels.push_back("exact");
  } else {
    // Res = N(x - alpha)^{C(Da) C(Delta) / d} and max{C(Da), C(Delta)} <= d
    const double lres = pair_product_log(d_alpha, d, cache).log_abs;
    const double both = static_cast<double>(ca) * static_cast<double>(cd);
    r.terms["norm_log_pair_average"] = lres / both;
    r.terms["norm_log_s1"] = lres * static_cast<double>(ca) / both;
    r.terms["norm_log_sC"] = lres;
    r.norm_log = lres * static_cast<double>(std::max(ca, cd)) / both;
    r.labels.push_back("pair-product");
  }

  const double h_alpha = c == Case::part1 ? height_singular(d_alpha).h
                         : c == Case::part2 ? std::log(1728.0) : 0.0;
  const double sx = std::sqrt(x);
  const double lx = std::log(x);
  const double lin = 3 / std::sqrt(5.0) * lx - 9.78;
  r.Y = std::max(M_PI * sx / static_cast<double>(cd), lin);
  const std::int64_t F = f_small(d);
  r.A = static_cast<double>(F) * std::log(std::max(x, xa));
  const double la = std::log(r.A);
  const double ly = std::log(r.Y / M_PI) / r.Y;

  switch (c) {
    case Case::part1: {
      r.C_const = std::log(static_cast<double>(ca)) + 4 * std::log(xa) + h_alpha + 1.04;
      r.terms["t1_A"] = 8 * r.A * static_cast<double>(ca) / (M_PI * sx);
      r.terms["t2_logA"] = (la + r.C_const) / lin;
      r.terms["t3_logY"] = ly;
      const double floor_log = std::max(3.12 + 3 * (std::log(static_cast<double>(ca)) + 4 * std::log(xa) + h_alpha),
                                        std::log(1e15) + 6 * std::log(static_cast<double>(ca)));
      r.terms["log_X_floor"] = floor_log;
      r.hypothesis_ok = lx >= floor_log;
      r.threshold = sx / 2;
      break;
    }
    case Case::part2:
      r.C_const = std::log(3456.0) - 2.67;
      r.terms["t1_A"] = 4 * r.A / (M_PI * sx);
      r.terms["t2_logA"] = (2 * la + r.C_const) / lin;
      r.terms["t3_logY"] = ly;
      r.hypothesis_ok = x >= 1e15;
      r.threshold = sx / 2;
      break;
    case Case::part3:
      r.C_const = -3.76;
      r.terms["t1_A"] = 12 * r.A / (M_PI * sx);
      r.terms["t2_logA"] = (3 * la + r.C_const) / lin;
      r.terms["t3_logY"] = 3 * ly;
      r.hypothesis_ok = x >= 1e15;
      r.threshold = sx / 20;
      break;
  }
  r.terms["t4_norm"] = r.norm_log / (M_PI * sx);
  r.terms["lhs_sum"] = r.terms["t1_A"] + r.terms["t2_logA"] + r.terms["t3_logY"] + r.terms["t4_norm"];

  // The epsilon of the upper-bound argument, evaluated at this Delta.
  if (c != Case::part3) {
    const Interval ai = Interval(kP, F) * log(Interval(kP, static_cast<long>(std::max(d.abs(), d_alpha.abs()))));
    const Interval si = sqrt(Interval(kP, static_cast<long>(d.abs())));
    if (c == Case::part1) {
      const std::int64_t dd = ca == 1 ? cd : ca * cd;
      r.eps_used = q_floor(dec("0.0003") * iv(dd) / (ai * iv(ca) * si * iv(d_alpha.abs()) * iv(d_alpha.abs())));
    } else {
      r.eps_used = q_floor(dec("0.3") * iv(cd) / (ai * si));
    }
  }

  r.margin = r.norm_log - r.threshold;
  if (!r.hypothesis_ok) r.labels.push_back("empirical");
  return r;
}

void certify_range(Case c, const Discriminant& d_alpha, std::int64_t lo, std::int64_t hi,
                   const std::function<void(const CertReport&)>& sink, ClassPolyCache* cache, unsigned threads) {
  if (lo > hi || hi >= 0) throw Error(Errc::invalid_argument, "range must satisfy lo <= hi < 0");
  check_case(c, d_alpha);
  std::vector<std::int64_t> deltas;
  for (std::int64_t v = hi; v >= lo; --v) {
    if (Discriminant::is_valid(v)) deltas.push_back(v);
  }
  std::vector<CertReport> out(deltas.size());
  auto one = [&](std::size_t i) {
    try {
      out[i] = main_theorem_check(c, d_alpha, Discriminant(deltas[i]), cache);
    } catch (const Error& e) {
      CertReport r;
      r.kase = c;
      r.disc = deltas[i];
      r.disc_alpha = d_alpha.value();
      r.error = std::string(to_string(e.code())) + ": " + e.what();
      out[i] = std::move(r);
    }
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      one(i);
      sink(out[i]);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < deltas.size();) one(i);
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& r : out) sink(r);
}

double norm_log_estimate(const Discriminant& d, const mpz_class& alpha, long prec_bits, double& err) {
  // |j(a,-b,c) - alpha| = |j(a,b,c) - alpha| for real alpha, so each pair is
  // evaluated once.
  const mpz_class neg = -alpha;
  double sum = 0;
  err = 0;
  Real lo(64), hi(64);
  for (const auto& f : enumerate_reduced(d)) {
    if (f.b < 0) continue;
    const double w = (f.b != 0 && f.b != f.a && f.a != f.c) ? 2.0 : 1.0;
    const BigComplex j = eval_j(f, prec_bits).value;
    BigComplex diff(j.prec());
    add_z(diff, j, neg);
    abs_lower(lo.get(), diff);
    abs_upper(hi.get(), diff);
    if (mpfr_sgn(lo.get()) <= 0) {
      throw Error(Errc::precision_exhausted, "conjugate difference not separated from zero");
    }
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    const double l = lo.to_double(MPFR_RNDD), h = hi.to_double(MPFR_RNDU);
    sum += w * 0.5 * (l + h);
    err += w * (0.5 * (h - l) + 1e-16 * std::fabs(h));
  }
  return sum;
}

}  // namespace cmnc
