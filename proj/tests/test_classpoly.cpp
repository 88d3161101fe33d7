#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cmnc/classpoly.hpp"
#include "cmnc/error.hpp"
#include "cmnc/forms.hpp"
#include "cmnc/intpoly.hpp"
#include "cmnc/jeval.hpp"

using namespace cmnc;
namespace fs = std::filesystem;

namespace {

ZPoly zp(std::initializer_list<const char*> cs) {
  ZPoly p;
  for (const char* c : cs) p.emplace_back(c);
  return p;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cmnc_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("known class polynomials") {
  const std::pair<std::int64_t, ZPoly> known[] = {
      {-3, zp({"0", "1"})},
      {-4, zp({"-1728", "1"})},
      {-7, zp({"3375", "1"})},
      {-8, zp({"-8000", "1"})},
      {-11, zp({"32768", "1"})},
      {-15, zp({"-121287375", "191025", "1"})},
      {-23, zp({"12771880859375", "-5151296875", "3491750", "1"})},
  };
  for (const auto& [d, coeffs] : known) {
    const ClassPolynomial h = hilbert_poly(Discriminant(d));
    CHECK(h.coeffs == coeffs);
    CHECK(h.cert.max_rounding_residual < 0.25);
    CHECK(h.cert.max_imag_residual < 0.25);
    CHECK(hilbert_poly_at(Discriminant(d), h.cert.prec_bits_used + 64).coeffs == coeffs);
  }
  CHECK(hilbert_poly(Discriminant(-4)).to_string() == "X - 1728");
  CHECK(hilbert_poly(Discriminant(-15)).to_string() == "X^2 + 191025*X - 121287375");
}

TEST_CASE("degree, monicity and roots up to 600") {
  for (std::int64_t n = 3; n <= 600; ++n) {
    if (!Discriminant::is_valid(-n)) continue;
    const Discriminant d(-n);
    const ClassPolynomial h = hilbert_poly(d);
    REQUIRE(h.degree() == class_number(d));
    REQUIRE(h.coeffs.back() == 1);
    // the trace is minus the sum of the j-values
    Real sum(256);
    for (const auto& f : enumerate_reduced(d)) {
      const JValue j = eval_j(f, 256);
      mpfr_add(sum.get(), sum.get(), j.value.re.get(), MPFR_RNDN);
    }
    const mpz_class trace = -h.coeffs[h.coeffs.size() - 2];
    Real diff(256);
    mpfr_sub_z(diff.get(), sum.get(), trace.get_mpz_t(), MPFR_RNDN);
    REQUIRE(std::fabs(diff.to_double()) < 1e-6);
  }
}

TEST_CASE("evaluation and resultants") {
  CHECK(eval_at_integer(hilbert_poly(Discriminant(-4)), 0) == -1728);
  CHECK(eval_at_integer(hilbert_poly(Discriminant(-7)), 1728) == 5103);
  CHECK(eval_at_integer(hilbert_poly(Discriminant(-3)), 0) == 0);

  CHECK(resultant(zp({"0", "1"}), zp({"-1728", "1"})) == -1728);
  CHECK(abs(resultant(zp({"3375", "1"}), zp({"-8000", "1"}))) == 11375);
  CHECK(resultant(zp({"1", "0", "1"}), zp({"-1", "0", "1"})) == 4);
  CHECK(resultant(zp({"-2", "0", "1"}), zp({"-2", "0", "1"})) == 0);
  const ZPoly h15 = hilbert_poly(Discriminant(-15)).coeffs;
  const ZPoly h23 = hilbert_poly(Discriminant(-23)).coeffs;
  CHECK(abs(resultant(h15, zp({"-1728", "1"}))) == abs(horner(h15, 1728)));
  CHECK(abs(resultant(h15, h23)) == abs(resultant(h23, h15)));
  // Res(f, gh) = Res(f, g) Res(f, h)
  const ZPoly h7 = hilbert_poly(Discriminant(-7)).coeffs;
  CHECK(resultant(h23, multiply(h15, h7)) == resultant(h23, h15) * resultant(h23, h7));
}

TEST_CASE("norms") {
  CHECK(*norm_diff_rational_alpha(Discriminant(-4), 0).exact == 1728);
  CHECK(*norm_diff_rational_alpha(Discriminant(-8), 1728).exact == 6272);
  CHECK(*norm_diff_rational_alpha(Discriminant(-15), 0).exact == 121287375);
  CHECK(norm_diff_rational_alpha(Discriminant(-15), 0).log_abs == doctest::Approx(std::log(121287375.0)));
  try {
    norm_diff_rational_alpha(Discriminant(-3), 0);
    FAIL("expected zero_norm");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_norm);
  }

  CHECK(*pair_product_log(Discriminant(-3), Discriminant(-4)).exact == 1728);
  CHECK(*pair_product_log(Discriminant(-7), Discriminant(-8)).exact == 11375);
  const NormResult r = pair_product_log(Discriminant(-15), Discriminant(-4));
  CHECK(r.mode == NormResult::Mode::pair_product);
  CHECK(*r.exact == abs(eval_at_integer(hilbert_poly(Discriminant(-15)), 1728)));
  CHECK_THROWS_AS(pair_product_log(Discriminant(-15), Discriminant(-15)), Error);
  for (std::int64_t d = -20; d >= -300; --d) {
    if (!Discriminant::is_valid(d)) continue;
    CHECK(abs(*norm_diff_rational_alpha(Discriminant(d), 1728).exact) >= 1);
  }
}

TEST_CASE("cache round trip and tampering") {
  const fs::path dir = fresh_dir("cache");
  ClassPolyCache cache(dir);
  if (cache.dir() != dir) return;  // CMNC_CACHE set in the environment
  CHECK_FALSE(cache.get(Discriminant(-15)).has_value());
  const ClassPolynomial h = hilbert_poly(Discriminant(-15));
  cache.put(h);
  const fs::path file = cache.file_for(Discriminant(-15));
  CHECK(file.filename() == "hcp_15.txt");
  const std::string text = slurp(file);
  CHECK(text == serialize_cache_entry(h));
  CHECK(text.rfind("HCP v1\ndisc=-15\ndegree=2\nprec_bits=", 0) == 0);
  CHECK(text.find("sha256=") != std::string::npos);

  ClassPolyCache reread(dir);
  const auto back = reread.get(Discriminant(-15));
  REQUIRE(back.has_value());
  CHECK(back->coeffs == h.coeffs);
  CHECK(serialize_cache_entry(*back) == text);

  // flip one digit of the constant term
  std::string bad = text;
  const auto pos = bad.find("121287375");
  REQUIRE(pos != std::string::npos);
  bad[pos] = '2';
  { std::ofstream(file, std::ios::binary | std::ios::trunc) << bad; }
  ClassPolyCache tampered(dir);
  try {
    tampered.get(Discriminant(-15));
    FAIL("expected corrupt_cache");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::corrupt_cache);
  }
  // get_or_compute recovers and overwrites
  CHECK(tampered.get_or_compute(Discriminant(-15)).coeffs == h.coeffs);
  CHECK(slurp(file) == text);
  fs::remove_all(dir);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
