#pragma once

#include <stdexcept>
#include <string>

namespace cmnc {

enum class Errc {
  invalid_argument,
  not_negative,
  invalid_residue,
  table_too_small,
  domain,
  undecidable_boundary,
  undecidable_distance,
  precision_exhausted,
  zero_norm,
  same_modulus,
  equal_discriminants,
  hypothesis_not_met,
  corrupt_cache,
  io,
};

const char* to_string(Errc code) noexcept;

// True for conditions caused by bad input rather than a failed computation.
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cmnc
