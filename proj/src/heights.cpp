#include "cmnc/heights.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cmnc/classpoly.hpp"
#include "cmnc/error.hpp"
#include "cmnc/jeval.hpp"

namespace cmnc {

namespace {

using cld = std::complex<long double>;

constexpr mpfr_prec_t kIvPrec = 128;

// [lower, upper] of |v| as doubles, rounded outward.
std::pair<double, double> abs_bracket(const BigComplex& v) {
  Real lo(64), hi(64);
  abs_lower(lo.get(), v);
  abs_upper(hi.get(), v);
  return {lo.to_double(MPFR_RNDD), hi.to_double(MPFR_RNDU)};
}

// log of a bracketed positive quantity, widened by a relative ulp margin.
std::pair<double, double> log_bracket(const BigComplex& v) {
  Real lo(64), hi(64);
  abs_lower(lo.get(), v);
  abs_upper(hi.get(), v);
  if (mpfr_sgn(lo.get()) <= 0) {
    throw Error(Errc::precision_exhausted, "ball around a conjugate difference contains zero");
  }
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return {lo.to_double(MPFR_RNDD), hi.to_double(MPFR_RNDU)};
}

cld to_cld(const BigComplex& z) { return {z.re.to_long_double(), z.im.to_long_double()}; }

std::complex<double> tau_of(const QForm& f) {
  const double a = static_cast<double>(f.a);
  return {f.b / (2 * a), std::sqrt(static_cast<double>(-f.discriminant())) / (2 * a)};
}

double rad_of(const BigComplex& z) { return z.rad.to_double(MPFR_RNDU); }

Interval iv(std::int64_t v) { return Interval::from_z(mpz_class(std::to_string(v)), kIvPrec); }

// Updates a check with one pair. `value` is |x - alpha| in long double with
// absolute error at most `err`; `bound` the right-hand side. When the fast
// comparison is inconclusive, `rigorous` decides.
template <class Rigorous>
void account(BoundCheck& c, long double value, long double err, long double bound,
             SeparationReport& rep, Rigorous&& rigorous) {
  ++c.pairs;
  if (bound > 0) c.worst_margin = std::min(c.worst_margin, static_cast<double>(std::log(value / bound)));
  if (value - err >= bound * (1 + 1e-15L)) return;
  ++rep.ball_fallbacks;
  const int verdict = rigorous();  // 1 holds, 0 violated, -1 undecided
  if (verdict == 0) ++c.violations;
  if (verdict < 0) ++rep.undecided;
}

}  // namespace

double log_plus(const BigComplex& v, double& err) {
  auto [lo, hi] = abs_bracket(v);
  const double llo = lo > 1 ? std::log(lo) : 0.0;
  const double lhi = hi > 1 ? std::log(hi) : 0.0;
  const double mid = 0.5 * (llo + lhi);
  err += 0.5 * (lhi - llo) + 4e-16 * std::fabs(mid);
  return mid;
}

HeightReport height_singular(const Discriminant& d, long prec_bits) {
  HeightReport rep{d, 0, {}, 0};
  const auto forms = enumerate_reduced(d);
  // (a, |b|) -> (term, err); (a, b, c) and (a, -b, c) have conjugate j-values
  std::map<std::pair<std::int64_t, std::int64_t>, std::pair<double, double>> memo;
  double sum = 0;
  for (const auto& f : forms) {
    const auto key = std::make_pair(f.a, f.b < 0 ? -f.b : f.b);
    auto it = memo.find(key);
    if (it == memo.end()) {
      double e = 0;
      const double t = log_plus(eval_j(QForm{f.a, key.second, f.c}, prec_bits).value, e);
      it = memo.emplace(key, std::make_pair(t, e)).first;
    }
    rep.per_conjugate.emplace_back(f, it->second.first);
    sum += it->second.first;
    rep.err += it->second.second;
  }
  const double c = static_cast<double>(forms.size());
  rep.h = sum / c;
  rep.err = rep.err / c + 1e-15 * std::fabs(rep.h);
  return rep;
}

HeightDiffReport height_diff_rational(const Discriminant& d, const mpz_class& alpha, long prec_bits,
                                      ClassPolyCache* cache) {
  const NormResult norm = norm_diff_rational_alpha(d, alpha, cache);
  const auto forms = enumerate_reduced(d);
  const double c = static_cast<double>(forms.size());

  HeightDiffReport rep{HeightReport{d, 0, {}, 0}, 0, 0, 0, 0};
  double direct = 0, inverse = 0, err = 0;
  const mpz_class neg_alpha = -alpha;
  for (const auto& f : forms) {
    const JValue jv = eval_j(f, prec_bits);
    BigComplex diff(jv.value.prec());
    add_z(diff, jv.value, neg_alpha);
    auto [llo, lhi] = log_bracket(diff);
    const double plus_lo = std::max(0.0, llo), plus_hi = std::max(0.0, lhi);
    const double minus_lo = std::max(0.0, -lhi), minus_hi = std::max(0.0, -llo);
    const double dt = 0.5 * (plus_lo + plus_hi);
    direct += dt;
    inverse += 0.5 * (minus_lo + minus_hi);
    err += 0.5 * (plus_hi - plus_lo) + 0.5 * (minus_hi - minus_lo);
    rep.direct.per_conjugate.emplace_back(f, dt);
  }
  rep.direct.h = direct / c;
  rep.direct.err = err / c + 1e-15 * rep.direct.h;
  rep.inverse_sum = inverse / c;
  rep.norm_log = norm.log_abs / c;
  rep.inverse_form = rep.inverse_sum + rep.norm_log;
  rep.err = rep.direct.err + 1e-15 * std::fabs(rep.inverse_form) + 1e-15 * norm.log_abs;
  return rep;
}

Interval lower_bound_51_interval(const Discriminant& d) {
  if (d.abs() < 16) throw Error(Errc::hypothesis_not_met, "the pi |Delta|^{1/2} bound needs |Delta| >= 16");
  const Interval num = Interval::pi(kIvPrec) * sqrt(iv(static_cast<std::int64_t>(d.abs()))) -
                       Interval::from_decimal("0.01", kIvPrec);
  return num / iv(class_number(d));
}

double lower_bound_51(const Discriminant& d) { return lower_bound_51_interval(d).hi_double(); }

Interval lower_bound_52a_interval(const Discriminant& d) {
  const Interval l = log(iv(static_cast<std::int64_t>(d.abs())));
  return 3 * l / sqrt(Interval(kIvPrec, 5)) - Interval::from_decimal("9.79", kIvPrec);
}

Interval lower_bound_52b_interval(const Discriminant& d) {
  const Interval l = log(iv(static_cast<std::int64_t>(d.abs())));
  return l / (4 * sqrt(Interval(kIvPrec, 5))) - Interval::from_decimal("5.93", kIvPrec);
}

double lower_bound_52(const Discriminant& d) {
  return std::max(lower_bound_52a_interval(d).hi_double(), lower_bound_52b_interval(d).hi_double());
}

DiffLowerBound diff_height_lower(const Discriminant& d, const Discriminant& d_alpha) {
  DiffLowerBound out;
  double best = lower_bound_52(d);
  if (d.abs() >= 16) {
    best = std::max(best, lower_bound_51(d));
    out.used_51 = true;
  }
  out.h_alpha = height_singular(d_alpha).h;
  out.value = best - out.h_alpha - std::log(2.0);
  return out;
}

ConjugateSet conjugates(const Discriminant& d, long prec_bits) {
  ConjugateSet s{d, enumerate_reduced(d), {}, {}, {}, prec_bits};
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  for (const auto& f : s.forms) {
    if (f.b < 0) {
      // conjugate of (a, -b, c), which sorts after this one; compute directly
      BigComplex j = eval_j(QForm{f.a, -f.b, f.c}, prec_bits).value;
      mpfr_neg(j.im.get(), j.im.get(), MPFR_RNDN);
      s.j.push_back(std::move(j));
      seen.emplace(std::make_pair(f.a, -f.b), s.j.size() - 1);
    } else if (auto it = seen.find({f.a, f.b}); it != seen.end()) {
      BigComplex j = s.j[it->second];
      mpfr_neg(j.im.get(), j.im.get(), MPFR_RNDN);
      s.j.push_back(std::move(j));
    } else {
      s.j.push_back(eval_j(f, prec_bits).value);
    }
    s.j_ld.push_back(to_cld(s.j.back()));
    s.tau.push_back(tau_of(f));
  }
  return s;
}

SeparationReport separation_audit(const ConjugateSet& x, const ConjugateSet& alpha, bool with_lemma51) {
  if (x.disc == alpha.disc) {
    throw Error(Errc::equal_discriminants, "separation audit needs distinct discriminants");
  }
  SeparationReport rep;
  rep.delta = x.disc.value();
  rep.delta_alpha = alpha.disc.value();
  const std::int64_t dmax = static_cast<std::int64_t>(std::max(x.disc.abs(), alpha.disc.abs()));
  const long double da = static_cast<long double>(alpha.disc.abs());
  const long double b52 = 800.0L / std::pow(static_cast<long double>(dmax), 4);
  const Interval b52_iv = Interval(kIvPrec, 800) / pow(iv(dmax), Interval(kIvPrec, 4));

  const bool at_i = alpha.disc.value() == -4;
  rep.thm52.applicable = true;
  rep.lemma53a.applicable = rep.lemma53b.applicable = at_i;
  const long double b53b = 2000.0L / (static_cast<long double>(x.disc.abs()) * x.disc.abs());
  const Interval b53b_iv = Interval(kIvPrec, 2000) / (iv(static_cast<std::int64_t>(x.disc.abs())) *
                                                      iv(static_cast<std::int64_t>(x.disc.abs())));

  const long double e26 = std::exp(2.6L * 3.14159265358979323846264338327950288L);
  rep.lemma51.applicable = with_lemma51;

  for (std::size_t k = 0; k < alpha.forms.size(); ++k) {
    const cld av = alpha.j_ld[k];
    const std::complex<double> tk = alpha.tau[k];
    const double ra = rad_of(alpha.j[k]);
    const bool tau_special = alpha.disc.value() == -3 || alpha.disc.value() == -4;
    for (std::size_t l = 0; l < x.forms.size(); ++l) {
      const cld xv = x.j_ld[l];
      const long double dist = std::abs(xv - av);
      const long double err = (std::abs(xv) + std::abs(av)) * 4e-18L + ra + rad_of(x.j[l]);
      rep.min_distance = std::min(rep.min_distance, static_cast<double>(dist));

      // Ball difference, then a recompute at four times the precision.
      auto ball_lower_at_least = [&](const Interval& bound) -> int {
        for (int pass = 0; pass < 2; ++pass) {
          BigComplex diff(std::max(x.j[l].prec(), alpha.j[k].prec()));
          if (pass == 0) {
            sub(diff, x.j[l], alpha.j[k]);
          } else {
            const long p = 4 * std::max(x.prec_bits, alpha.prec_bits);
            const QForm fx = x.forms[l], fa = alpha.forms[k];
            auto jx = eval_j(QForm{fx.a, fx.b < 0 ? -fx.b : fx.b, fx.c}, p).value;
            auto ja = eval_j(QForm{fa.a, fa.b < 0 ? -fa.b : fa.b, fa.c}, p).value;
            if (fx.b < 0) mpfr_neg(jx.im.get(), jx.im.get(), MPFR_RNDN);
            if (fa.b < 0) mpfr_neg(ja.im.get(), ja.im.get(), MPFR_RNDN);
            diff = BigComplex(p);
            sub(diff, jx, ja);
          }
          Real lo(kIvPrec), hi(kIvPrec);
          abs_lower(lo.get(), diff);
          abs_upper(hi.get(), diff);
          if (mpfr_cmp(lo.get(), bound.hi().get()) >= 0) return 1;
          if (mpfr_cmp(hi.get(), bound.lo().get()) < 0) return 0;
        }
        return -1;
      };

      account(rep.thm52, dist, err, b52, rep, [&] { return ball_lower_at_least(b52_iv); });

      if (at_i) {
        const std::complex<double> z = x.tau[l];
        const double dz = std::abs(z - std::complex<double>(0, 1));
        const long double m = std::min<long double>(dz, 0.01L);
        account(rep.lemma53a, dist, err, 20000.0L * m * m, rep, [&] {
          // |z - i|^2 = re^2 + (im - 1)^2 with im = sqrt|D| / 2a
          const QForm& f = x.forms[l];
          const Interval re = Interval::from_q(mpq_class(f.b, 2 * f.a), kIvPrec);
          const Interval im = sqrt(iv(static_cast<std::int64_t>(x.disc.abs()))) / (2 * f.a);
          const Interval dzi = sqrt(re * re + (im - 1) * (im - 1));
          const Interval mm = min(dzi, Interval::from_decimal("0.01", kIvPrec));
          return ball_lower_at_least(Interval(kIvPrec, 20000) * mm * mm);
        });
        account(rep.lemma53b, dist, err, b53b, rep, [&] { return ball_lower_at_least(b53b_iv); });
      }

      if (with_lemma51) {
        // nearest image of z to tau among F and its neighbours
        const std::complex<double> z = x.tau[l];
        const std::complex<double> s = -1.0 / z;
        const std::complex<double> cands[] = {z,     z + 1.0,          z - 1.0,          s,
                                              s + 1.0, s - 1.0, -1.0 / (z + 1.0), -1.0 / (z - 1.0)};
        double best = HUGE_VAL;
        for (const auto& c : cands) best = std::min(best, std::abs(c - tk));
        long double bound = -1;
        if (tk.imag() >= 1.3) {
          bound = e26 * std::min<long double>(0.4L * best, 0.04L);
        } else if (!tau_special) {
          bound = std::min({5e-7L, 800.0L / std::pow(da, 4), 2400.0L / (da * da) * best});
        }
        if (bound >= 0) {
          ++rep.lemma51.pairs;
          rep.lemma51.worst_margin =
              std::min(rep.lemma51.worst_margin, static_cast<double>(std::log(dist / bound)));
          if (dist + err < bound) ++rep.lemma51.violations;
        }
      }
    }
  }
  if (!with_lemma51) rep.lemma51.applicable = false;
  return rep;
}

SeparationReport separation_audit(const Discriminant& d, const Discriminant& d_alpha, long prec_bits) {
  return separation_audit(conjugates(d, prec_bits), conjugates(d_alpha, prec_bits), true);
}

}  // namespace cmnc
