// cmnc: command-line front end for the singular-moduli library.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "cmnc/certify.hpp"
#include "cmnc/classpoly.hpp"
#include "cmnc/cmcount.hpp"
#include "cmnc/disc.hpp"
#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/heights.hpp"
#include "cmnc/intarith.hpp"
#include "cmnc/jeval.hpp"
#include "cmnc/report.hpp"

using namespace cmnc;
using nlohmann::ordered_json;

namespace {

struct Config {
  std::string format = "text";
  long prec = 128;
  std::string cache_dir;
  unsigned threads = 1;
  bool no_timestamp = false;
};

std::string str(const QForm& f) {
  return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

mpq_class parse_fraction(const std::string& s) {
  static const std::regex re(R"(^-?[0-9]+/[0-9]+$)");
  if (!std::regex_match(s, re)) {
    throw Error(Errc::invalid_argument, "eps must be an exact fraction p/q, got '" + s + "'");
  }
  mpq_class q(s, 10);
  if (q.get_den() == 0) throw Error(Errc::invalid_argument, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// Integer, p/q or a finite decimal, read exactly.
mpq_class parse_exact(const std::string& s) {
  static const std::regex frac(R"(^-?[0-9]+(/[0-9]+)?$)");
  static const std::regex decimal(R"(^(-?)([0-9]*)\.([0-9]+)$)");
  std::smatch m;
  if (std::regex_match(s, frac)) {
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw Error(Errc::invalid_argument, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, decimal)) {
    mpz_class den = 1;
    for (std::size_t i = 0; i < m[3].length(); ++i) den *= 10;
    mpq_class q(mpz_class(m[2].str() + m[3].str(), 10), den);
    q.canonicalize();
    return m[1].length() ? -q : q;
  }
  throw Error(Errc::invalid_argument, "not an exact number: '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

QForm parse_form(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(Errc::invalid_argument, "form must be a,b,c");
  try {
    return QForm{std::stoll(parts[0]), std::stoll(parts[1]), std::stoll(parts[2])};
  } catch (const std::logic_error&) {
    throw Error(Errc::invalid_argument, "form must be three integers a,b,c");
  }
}

// "<Delta_tau>" (the point of the principal form) or "re,im".
QuadPoint parse_tau(const std::string& s) {
  if (s.find(',') == std::string::npos) {
    const Discriminant d(std::stoll(s));
    return point_of_form(enumerate_reduced(d).front()).z;
  }
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw Error(Errc::invalid_argument, "tau must be re,im");
  const mpq_class im = parse_exact(parts[1]);
  if (im <= 0) throw Error(Errc::domain, "Im tau must be positive");
  return QuadPoint{parse_exact(parts[0]), im * im};
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  static const std::regex re(R"(^(-?[0-9]+)\.\.(-?[0-9]+)$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw Error(Errc::invalid_argument, "range must be a..b");
  std::int64_t a = std::stoll(m[1].str()), b = std::stoll(m[2].str());
  if (a > b) std::swap(a, b);
  return {a, b};
}

std::string q_str(const QuadPoint& z) { return z.re.get_str() + " + i sqrt(" + z.im_sq.get_str() + ")"; }

class Emitter {
 public:
  explicit Emitter(const Config& cfg) : fmt_(parse_format(cfg.format)), stamp_(!cfg.no_timestamp) {}

  Format format() const { return fmt_; }
  bool timestamp() const { return stamp_; }

  // JSON object for json, its flat scalar fields for csv, `text` otherwise.
  void emit(ordered_json j, const std::string& text) const {
    switch (fmt_) {
      case Format::json:
        if (stamp_) j["timestamp"] = utc_timestamp();
        std::cout << j.dump(2) << "\n";
        break;
      case Format::csv: {
        std::string head, row;
        for (const auto& [k, v] : j.items()) {
          if (v.is_structured()) continue;
          head += (head.empty() ? "" : ",") + k;
          row += (row.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        std::cout << head << "\n" << row << "\n";
        break;
      }
      case Format::text:
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        break;
    }
  }

 private:
  Format fmt_;
  bool stamp_;
};

ordered_json ball_json(const BigComplex& z) {
  return {{"re", z.re.to_string(40)}, {"im", z.im.to_string(40)}, {"err", z.rad.to_string(6)}};
}

int run(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Singular moduli: class groups, j-values, class polynomials, heights, norm bounds"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--prec", cfg.prec, "working precision in bits")->check(CLI::Range(32L, 1L << 20));
  app.add_option("--cache-dir", cfg.cache_dir, "class polynomial cache (CMNC_CACHE overrides)");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--no-timestamp", cfg.no_timestamp, "omit timestamps from JSON output");

  long long delta = 0;
  auto* c_disc = app.add_subcommand("disc", "decomposition Delta = f^2 D");
  c_disc->add_option("delta", delta)->required();
  auto* c_forms = app.add_subcommand("forms", "reduced forms of Delta");
  c_forms->add_option("delta", delta)->required();
  auto* c_classnum = app.add_subcommand("classnum", "class number C(Delta)");
  c_classnum->add_option("delta", delta)->required();

  std::string form_s;
  auto* c_j = app.add_subcommand("j", "j-values of the reduced forms, or of one form");
  c_j->add_option("delta", delta)->required();
  c_j->add_option("--form", form_s, "a,b,c");

  auto* c_hilbert = app.add_subcommand("hilbert", "Hilbert class polynomial");
  c_hilbert->add_option("delta", delta)->required();

  std::string tau_s, eps_s;
  auto* c_count = app.add_subcommand("count-eps", "exact C_eps(tau, Delta)");
  c_count->add_option("delta", delta)->required();
  c_count->add_option("--tau", tau_s, "Delta_tau or re,im")->required();
  c_count->add_option("--eps", eps_s, "p/q")->required();
  auto* c_bounds = app.add_subcommand("bounds-eps", "upper bounds for C_eps(tau, Delta)");
  c_bounds->add_option("delta", delta)->required();
  c_bounds->add_option("--tau", tau_s, "Delta_tau or re,im")->required();
  c_bounds->add_option("--eps", eps_s, "p/q")->required();

  std::string alpha_s;
  auto* c_height = app.add_subcommand("height", "height of a singular modulus, or of x - alpha");
  c_height->add_option("delta", delta)->required();
  c_height->add_option("--alpha", alpha_s, "integer alpha");

  long long d_alpha = 0, d_x = 0;
  auto* c_norm = app.add_subcommand("norm", "log |N(x - alpha)|");
  c_norm->add_option("--alpha-disc", d_alpha)->required();
  c_norm->add_option("--disc", d_x)->required();

  std::string case_s, range_s;
  auto* c_cert = app.add_subcommand("certify", "main inequality over a range of discriminants");
  c_cert->add_option("--case", case_s, "1, 2 or 3")->required();
  c_cert->add_option("--alpha-disc", d_alpha)->required();
  c_cert->add_option("--range", range_s, "a..b")->required();

  auto* c_audit = app.add_subcommand("audit-constants", "interval check of the decimal constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const Emitter out(cfg);
  ClassPolyCache cache(cfg.cache_dir);

  if (c_disc->parsed()) {
    const Discriminant d(delta);
    ordered_json j{{"delta", std::to_string(d.value())},      {"D", std::to_string(d.fundamental())},
                   {"f", std::to_string(d.conductor())},       {"f_mod", std::to_string(d.modified_conductor())},
                   {"quadratic_divisors", quadratic_divisors(d)}};
    std::ostringstream t;
    t << "Delta=" << d.value() << " D=" << d.fundamental() << " f=" << d.conductor()
      << " f~=" << d.modified_conductor();
    out.emit(j, t.str());
  } else if (c_forms->parsed()) {
    const auto forms = enumerate_reduced(Discriminant(delta));
    ordered_json list = ordered_json::array();
    std::string t;
    for (const auto& f : forms) {
      list.push_back({f.a, f.b, f.c});
      t += str(f) + "\n";
    }
    out.emit({{"delta", std::to_string(delta)}, {"count", forms.size()}, {"forms", list}}, t);
  } else if (c_classnum->parsed()) {
    const std::int64_t h = class_number(Discriminant(delta));
    out.emit({{"delta", std::to_string(delta)}, {"class_number", std::to_string(h)}}, std::to_string(h));
  } else if (c_j->parsed()) {
    const Discriminant d(delta);
    std::vector<JValue> vals;
    if (!form_s.empty()) {
      const QForm f = parse_form(form_s);
      if (f.discriminant() != d.value()) throw Error(Errc::invalid_argument, "form has a different discriminant");
      vals.push_back(eval_j_any(point_of_form(f), cfg.prec));
    } else {
      for (const auto& f : enumerate_reduced(d)) vals.push_back(eval_j(f, cfg.prec));
    }
    ordered_json list = ordered_json::array();
    std::string t;
    for (const auto& v : vals) {
      ordered_json e = ball_json(v.value);
      e["form"] = str(v.tau.form);
      e["terms_used"] = v.terms_used;
      list.push_back(e);
      t += str(v.tau.form) + "  " + to_string(v.value, 30) + "\n";
    }
    out.emit({{"delta", std::to_string(delta)}, {"prec_bits", cfg.prec}, {"values", list}}, t);
  } else if (c_hilbert->parsed()) {
    const ClassPolynomial h = cache.get_or_compute(Discriminant(delta));
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : h.coeffs) coeffs.push_back(c.get_str());
    out.emit({{"delta", std::to_string(delta)},
              {"degree", h.degree()},
              {"polynomial", h.to_string()},
              {"coeffs", coeffs},
              {"prec_bits_used", h.cert.prec_bits_used},
              {"max_rounding_residual", format_double(h.cert.max_rounding_residual)},
              {"max_imag_residual", format_double(h.cert.max_imag_residual)}},
             h.to_string());
  } else if (c_count->parsed() || c_bounds->parsed()) {
    const Discriminant d(delta);
    const EpsQuery q{parse_tau(tau_s), parse_fraction(eps_s), d};
    validate(q);
    ordered_json j{{"delta", std::to_string(delta)}, {"tau", q_str(q.tau)}, {"eps", q.eps.get_str()}};
    std::ostringstream t;
    if (c_count->parsed()) {
      const EpsCountResult r = exact_count_eps(q);
      ordered_json w = ordered_json::array();
      for (const auto& f : r.witnesses) w.push_back(str(f));
      j["exact_count"] = std::to_string(r.exact_count);
      j["a_interval"] = {format_double(r.a_interval.first), format_double(r.a_interval.second)};
      j["witnesses"] = w;
      j["report_only"] = r.report_only;
      t << r.exact_count;
      for (const auto& f : r.witnesses) t << "\n  " << str(f);
    } else {
      const SpfTable table(std::max<std::uint64_t>(2, isqrt(d.abs())));
      const std::int64_t F = f_of_disc(d, table);
      const double thm = thm_bound_eps(q, F).hi_double();
      j["F"] = std::to_string(F);
      j["thm_bound"] = format_double(thm);
      t << "F=" << F << " thm_bound=" << format_double(thm);
      if (d.abs() >= 100000000000000ULL) {
        const double cor = cor_bound_eps(q, F).hi_double();
        j["cor_bound"] = format_double(cor);
        t << " cor_bound=" << format_double(cor);
      }
      j["report_only"] = q.eps >= mpq_class(1, 4);
    }
    out.emit(j, t.str());
  } else if (c_height->parsed()) {
    const Discriminant d(delta);
    std::ostringstream t;
    ordered_json j{{"delta", std::to_string(delta)}};
    if (alpha_s.empty()) {
      const HeightReport r = height_singular(d, cfg.prec);
      j["h"] = format_double(r.h);
      j["err"] = format_double(r.err);
      j["lower_bound_52"] = format_double(lower_bound_52(d));
      t << "h=" << format_double(r.h) << " err=" << format_double(r.err);
      if (d.abs() >= 16) {
        j["lower_bound_51"] = format_double(lower_bound_51(d));
        t << " lower_bound_51=" << format_double(lower_bound_51(d));
      }
      t << " lower_bound_52=" << format_double(lower_bound_52(d));
    } else {
      const HeightDiffReport r = height_diff_rational(d, mpz_class(alpha_s, 10), cfg.prec, &cache);
      j["alpha"] = alpha_s;
      j["direct"] = format_double(r.direct.h);
      j["inverse_form"] = format_double(r.inverse_form);
      j["inverse_sum"] = format_double(r.inverse_sum);
      j["norm_log"] = format_double(r.norm_log);
      j["err"] = format_double(r.err);
      t << "direct=" << format_double(r.direct.h) << " inverse_form=" << format_double(r.inverse_form)
        << " err=" << format_double(r.err);
    }
    out.emit(j, t.str());
  } else if (c_norm->parsed()) {
    const Discriminant da(d_alpha), dx(d_x);
    NormResult r;
    if (class_number(da) == 1) {
      const mpz_class alpha = -cache.get_or_compute(da).coeffs[0];
      r = norm_diff_rational_alpha(dx, alpha, &cache);
    } else {
      r = pair_product_log(da, dx, &cache);
    }
    ordered_json j{{"alpha_disc", std::to_string(d_alpha)},
                   {"disc", std::to_string(d_x)},
                   {"mode", to_string(r.mode)},
                   {"log_abs", format_double(r.log_abs)}};
    if (r.exact) j["exact"] = r.exact->get_str();
    out.emit(j, std::string(to_string(r.mode)) + " log|N|=" + format_double(r.log_abs) +
                    (r.exact ? " |N|=" + r.exact->get_str() : ""));
  } else if (c_cert->parsed()) {
    const Case c = parse_case(case_s);
    const Discriminant da(d_alpha);
    const auto [lo, hi] = parse_range(range_s);
    std::vector<CertReport> reports;
    certify_range(c, da, lo, hi, [&](const CertReport& r) { reports.push_back(r); }, &cache, cfg.threads);
    std::cout << serialize_reports(reports, out.format(), out.timestamp());
  } else if (c_audit->parsed()) {
    const ConstantsAudit audit = constants_audit(std::max<long>(cfg.prec, 128));
    std::cout << serialize_audit(audit, out.format(), out.timestamp());
    return audit.all_pass() ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string format = "text";
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--format") format = argv[i + 1];
  }
  auto fail = [&](int code, const std::string& reason, const std::string& what) {
    if (format == "json") {
      std::cout << ordered_json{{"error", reason}, {"reason", what}}.dump() << "\n";
    } else {
      std::cerr << "error: " << reason << ": " << what << "\n";
    }
    return code;
  };
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    return fail(is_validation_error(e.code()) ? 1 : 2, to_string(e.code()), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(1, "invalid-argument", e.what());
  } catch (const std::out_of_range& e) {
    return fail(1, "invalid-argument", e.what());
  } catch (const std::exception& e) {
    return fail(2, "internal", e.what());
  }
}
