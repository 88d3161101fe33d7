#pragma once

#include <cstdint>
#include <vector>

namespace cmnc {

/// A negative discriminant Delta = f^2 * D of an imaginary quadratic order,
/// with D fundamental and f the conductor. The modified conductor is f when
/// D = 1 (mod 4) and 2f otherwise; Delta / f_mod^2 is square-free.
///
/// Validation happens in the constructor; downstream code takes this type
/// rather than raw integers.
class Discriminant {
 public:
  // Throws Error(not_negative) for delta >= 0 and Error(invalid_residue) for
  // delta = 2, 3 (mod 4).
  explicit Discriminant(std::int64_t delta);

  std::int64_t value() const noexcept { return delta_; }
  std::uint64_t abs() const noexcept { return static_cast<std::uint64_t>(-delta_); }
  std::int64_t fundamental() const noexcept { return d_fund_; }
  std::int64_t conductor() const noexcept { return f_; }
  std::int64_t modified_conductor() const noexcept { return f_mod_; }

  // Validation without throwing.
  static bool is_valid(std::int64_t delta) noexcept;

  friend bool operator==(const Discriminant& a, const Discriminant& b) noexcept {
    return a.delta_ == b.delta_;
  }
  friend auto operator<=>(const Discriminant& a, const Discriminant& b) noexcept {
    return a.delta_ <=> b.delta_;
  }

 private:
  std::int64_t delta_;
  std::int64_t d_fund_;
  std::int64_t f_;
  std::int64_t f_mod_;
};

inline Discriminant new_discriminant(std::int64_t delta) { return Discriminant(delta); }

// Sorted divisors of the modified conductor, i.e. all d >= 1 with d^2 | Delta.
std::vector<std::int64_t> quadratic_divisors(const Discriminant& d);

// The thirteen discriminants of class number one.
inline constexpr std::int64_t kClassNumberOne[13] = {-3,  -4,  -7,  -8,  -11, -12, -16,
                                                     -19, -27, -28, -43, -67, -163};

}  // namespace cmnc
