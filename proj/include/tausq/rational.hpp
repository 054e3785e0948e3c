#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace tausq {

/// Exact fraction num/den with den > 0. Not reduced on construction so that
/// sums over a pattern keep their natural denominator (e.g. 135/3).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational reduced() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "135/3"
  std::string fraction_string() const;
  // Decimal with up to `digits` fractional digits, trailing zeros removed.
  std::string decimal_string(int digits = 6) const;

  // Parses "0.1", "1", "3/40". Throws std::invalid_argument.
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, std::int64_t k);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Narrowing from 128-bit intermediates; throws std::overflow_error.
std::int64_t checked_narrow(__int128 v);

}  // namespace tausq
