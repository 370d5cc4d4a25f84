#include "parisi/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace parisi {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = text.find('/');
  auto parse_int = [](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("empty integer in rational literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
      neg = (s[0] == '-');
      i = 1;
      if (i == s.size()) throw std::invalid_argument("sign without digits");
    }
    i128 v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw std::invalid_argument("invalid digit in rational literal");
      }
      v = v * 10 + (s[i] - '0');
      if (v > i128(INT64_MAX)) throw std::overflow_error("rational literal too large");
    }
    return static_cast<std::int64_t>(neg ? -v : v);
  };

  if (slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash));
    std::int64_t d = parse_int(text.substr(slash + 1));
    return Rational(n, d);
  }

  std::size_t dot = text.find('.');
  if (dot == std::string_view::npos) {
    return Rational(parse_int(text), 1);
  }
  // decimal: digits.digits -> (all digits) / 10^frac_len
  std::string digits;
  digits.reserve(text.size());
  digits.append(text.substr(0, dot));
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty()) throw std::invalid_argument("trailing decimal point");
  digits.append(frac);
  i128 den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    den *= 10;
    if (den > i128(INT64_MAX)) throw std::overflow_error("decimal literal too long");
  }
  std::int64_t n = parse_int(digits);
  return Rational(n, static_cast<std::int64_t>(den));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return make(i128(num_) * o.den_, i128(den_) * o.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

bool Rational::operator<(const Rational& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

}  // namespace parisi
