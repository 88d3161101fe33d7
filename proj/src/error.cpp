#include "cmnc/error.hpp"

namespace cmnc {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::not_negative: return "not-negative";
    case Errc::invalid_residue: return "invalid-residue";
    case Errc::table_too_small: return "table-too-small";
    case Errc::domain: return "domain";
    case Errc::undecidable_boundary: return "undecidable-boundary";
    case Errc::undecidable_distance: return "undecidable-distance";
    case Errc::precision_exhausted: return "precision-escalation-exhausted";
    case Errc::zero_norm: return "zero-norm";
    case Errc::same_modulus: return "same-modulus";
    case Errc::equal_discriminants: return "equal-discriminants";
    case Errc::hypothesis_not_met: return "hypothesis-not-met";
    case Errc::corrupt_cache: return "corrupt-cache-entry";
    case Errc::io: return "io";
  }
  return "unknown";
}

bool is_validation_error(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::not_negative:
    case Errc::invalid_residue:
    case Errc::domain:
    case Errc::same_modulus:
    case Errc::equal_discriminants:
    case Errc::hypothesis_not_met:
      return true;
    default:
      return false;
  }
}

}  // namespace cmnc
