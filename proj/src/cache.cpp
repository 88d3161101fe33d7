#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "cmnc/classpoly.hpp"
#include "cmnc/error.hpp"

namespace cmnc {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

[[noreturn]] void corrupt(const std::string& why) { throw Error(Errc::corrupt_cache, why); }

std::string field(const std::string& line, const std::string& key) {
  if (line.rfind(key + "=", 0) != 0) corrupt("expected " + key + "=, got '" + line + "'");
  return line.substr(key.size() + 1);
}

long to_long(const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) corrupt("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    corrupt("bad integer '" + s + "'");
  }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::io, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string serialize_cache_entry(const ClassPolynomial& h) {
  std::string body;
  for (const auto& c : h.coeffs) body += c.get_str() + "\n";
  std::ostringstream os;
  os << "HCP v1\n"
     << "disc=" << h.disc.value() << "\n"
     << "degree=" << h.degree() << "\n"
     << "prec_bits=" << h.cert.prec_bits_used << "\n"
     << "sha256=" << sha256_hex(body) << "\n"
     << body;
  return os.str();
}

ClassPolynomial parse_cache_entry(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.size() < 6 || lines[0] != "HCP v1") corrupt("bad header");
  const long disc = to_long(field(lines[1], "disc"));
  const long deg = to_long(field(lines[2], "degree"));
  const long prec = to_long(field(lines[3], "prec_bits"));
  const std::string sum = field(lines[4], "sha256");
  if (deg < 0 || static_cast<std::size_t>(deg) + 6 != lines.size()) corrupt("degree does not match");
  std::string body;
  for (std::size_t i = 5; i < lines.size(); ++i) body += lines[i] + "\n";
  if (sha256_hex(body) != sum) corrupt("checksum mismatch");
  if (!Discriminant::is_valid(disc)) corrupt("invalid discriminant");

  ClassPolynomial h{Discriminant(disc), {}, {}};
  h.cert.prec_bits_used = prec;
  for (std::size_t i = 5; i < lines.size(); ++i) {
    mpz_class c;
    if (c.set_str(lines[i], 10) != 0) corrupt("bad coefficient");
    h.coeffs.push_back(c);
  }
  if (h.coeffs.back() != 1) corrupt("not monic");
  return h;
}

ClassPolyCache::ClassPolyCache(fs::path dir) : dir_(std::move(dir)) {
  if (const char* env = std::getenv("CMNC_CACHE"); env && *env) dir_ = env;
}

fs::path ClassPolyCache::file_for(const Discriminant& d) const {
  return dir_ / ("hcp_" + std::to_string(d.abs()) + ".txt");
}

std::optional<ClassPolynomial> ClassPolyCache::get(const Discriminant& d) {
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(d.value()); it != memo_.end()) return it->second;
  }
  if (dir_.empty()) return std::nullopt;
  const fs::path path = file_for(d);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  ClassPolynomial h = parse_cache_entry(ss.str());
  if (!(h.disc == d)) corrupt("entry is for a different discriminant");
  std::lock_guard lock(mu_);
  memo_.emplace(d.value(), h);
  return h;
}

void ClassPolyCache::put(const ClassPolynomial& h) {
  // One writer at a time within the process, so the .tmp name cannot clash.
  std::lock_guard lock(mu_);
  memo_.insert_or_assign(h.disc.value(), h);
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  const fs::path path = file_for(h.disc);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
    out << serialize_cache_entry(h);
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

ClassPolynomial ClassPolyCache::get_or_compute(const Discriminant& d) {
  try {
    if (auto h = get(d)) return *h;
  } catch (const Error& e) {
    if (e.code() != Errc::corrupt_cache) throw;
  }
  ClassPolynomial h = hilbert_poly(d);
  put(h);
  return h;
}

}  // namespace cmnc
