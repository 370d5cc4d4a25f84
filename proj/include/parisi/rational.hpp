#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace parisi {

/// Exact rational arithmetic on 64-bit numerator/denominator, always stored
/// in lowest terms with a positive denominator.  Intermediate products go
/// through 128-bit integers; anything that would not fit back into 64 bits
/// throws std::overflow_error.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts "a/b", "a", or a plain decimal like "0.25" (no exponents).
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  /// Lowest-terms text form, "7/39" or "2" when the denominator is 1.
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace parisi
