#include "cmnc/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "cmnc/error.hpp"

namespace cmnc {

using nlohmann::ordered_json;

namespace {

ordered_json to_json(const CertReport& r) {
  ordered_json j;
  j["case"] = to_string(r.kase);
  j["disc"] = std::to_string(r.disc);
  j["disc_alpha"] = std::to_string(r.disc_alpha);
  j["X"] = format_double(r.X);
  j["Y"] = format_double(r.Y);
  j["A"] = format_double(r.A);
  j["C_const"] = format_double(r.C_const);
  j["eps_used"] = r.eps_used.get_str();
  ordered_json terms = ordered_json::object();
  for (const auto& [k, v] : r.terms) terms[k] = format_double(v);
  j["terms"] = terms;
  j["norm_log"] = format_double(r.norm_log);
  j["threshold"] = format_double(r.threshold);
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["margin"] = format_double(r.margin);
  j["labels"] = r.labels;
  j["error"] = r.error;
  return j;
}

double num(const ordered_json& j, const char* key) {
  const std::string s = j.at(key).get<std::string>();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw Error(Errc::invalid_argument, std::string("bad number in ") + key);
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <class T>
std::string join(const T& items, const char* sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw Error(Errc::invalid_argument, "format must be json, csv or text");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_header() {
  return "case,disc,disc_alpha,X,Y,A,C_const,eps_used,terms,norm_log,threshold,hypothesis_ok,margin,labels,error";
}

std::string csv_row(const CertReport& r) {
  std::vector<std::string> terms;
  for (const auto& [k, v] : r.terms) terms.push_back(k + "=" + format_double(v));
  std::ostringstream os;
  os << to_string(r.kase) << ',' << r.disc << ',' << r.disc_alpha << ',' << format_double(r.X) << ','
     << format_double(r.Y) << ',' << format_double(r.A) << ',' << format_double(r.C_const) << ','
     << r.eps_used.get_str() << ',' << csv_escape(join(terms, ";")) << ',' << format_double(r.norm_log) << ','
     << format_double(r.threshold) << ',' << (r.hypothesis_ok ? "true" : "false") << ','
     << format_double(r.margin) << ',' << csv_escape(join(r.labels, ";")) << ',' << csv_escape(r.error);
  return os.str();
}

std::string serialize_reports(const std::vector<CertReport>& reports, Format f, bool timestamp) {
  switch (f) {
    case Format::json: {
      ordered_json doc;
      if (timestamp) doc["timestamp"] = utc_timestamp();
      doc["reports"] = ordered_json::array();
      for (const auto& r : reports) doc["reports"].push_back(to_json(r));
      return doc.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out = csv_header() + "\n";
      for (const auto& r : reports) out += csv_row(r) + "\n";
      return out;
    }
    case Format::text: {
      std::ostringstream os;
      for (const auto& r : reports) {
        os << to_string(r.kase) << " Delta_alpha=" << r.disc_alpha << " Delta=" << r.disc;
        if (!r.error.empty()) {
          os << " error: " << r.error << "\n";
          continue;
        }
        os << " log|N|=" << format_double(r.norm_log) << " threshold=" << format_double(r.threshold)
           << " margin=" << format_double(r.margin) << (r.hypothesis_ok ? "" : " (empirical)") << "\n";
      }
      return os.str();
    }
  }
  return {};
}

std::vector<CertReport> parse_reports_json(const std::string& text) {
  std::vector<CertReport> out;
  try {
    const ordered_json doc = ordered_json::parse(text);
    for (const auto& j : doc.at("reports")) {
      CertReport r;
      r.kase = parse_case(j.at("case").get<std::string>());
      r.disc = std::stoll(j.at("disc").get<std::string>());
      r.disc_alpha = std::stoll(j.at("disc_alpha").get<std::string>());
      r.X = num(j, "X");
      r.Y = num(j, "Y");
      r.A = num(j, "A");
      r.C_const = num(j, "C_const");
      r.eps_used = mpq_class(j.at("eps_used").get<std::string>(), 10);
      for (const auto& [k, v] : j.at("terms").items()) r.terms[k] = std::stod(v.get<std::string>());
      r.norm_log = num(j, "norm_log");
      r.threshold = num(j, "threshold");
      r.hypothesis_ok = j.at("hypothesis_ok").get<bool>();
      r.margin = num(j, "margin");
      r.labels = j.at("labels").get<std::vector<std::string>>();
      r.error = j.at("error").get<std::string>();
      out.push_back(std::move(r));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::invalid_argument, std::string("malformed report JSON: ") + e.what());
  }
  return out;
}

std::string serialize_audit(const ConstantsAudit& audit, Format f, bool timestamp) {
  switch (f) {
    case Format::json: {
      ordered_json doc;
      if (timestamp) doc["timestamp"] = utc_timestamp();
      doc["claims"] = audit.claims();
      doc["failures"] = audit.failures();
      doc["checks"] = ordered_json::array();
      for (const auto& c : audit.checks) {
        ordered_json j;
        j["id"] = c.id;
        j["where"] = c.where;
        j["claim"] = c.claim;
        j["lo"] = c.value.lo().to_string(25);
        j["hi"] = c.value.hi().to_string(25);
        j["relation"] = c.relation;
        j["bound"] = c.bound;
        j["pass"] = c.pass;
        j["diagnostic"] = c.diagnostic;
        j["note"] = c.note;
        doc["checks"].push_back(j);
      }
      return doc.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out = "id,where,claim,lo,hi,relation,bound,pass,diagnostic,note\n";
      for (const auto& c : audit.checks) {
        out += csv_escape(c.id) + "," + csv_escape(c.where) + "," + csv_escape(c.claim) + "," +
               c.value.lo().to_string(25) + "," + c.value.hi().to_string(25) + "," + c.relation + "," + c.bound +
               "," + (c.pass ? "true" : "false") + "," + (c.diagnostic ? "true" : "false") + "," +
               csv_escape(c.note) + "\n";
      }
      return out;
    }
    case Format::text: {
      std::ostringstream os;
      for (const auto& c : audit.checks) {
        os << (c.diagnostic ? "info " : (c.pass ? "pass " : "FAIL ")) << c.id << ": " << c.claim << "  ["
           << c.value.to_string(10) << "]\n";
      }
      os << audit.claims() << " claims, " << audit.failures() << " failures\n";
      return os.str();
    }
  }
  return {};
}

}  // namespace cmnc
