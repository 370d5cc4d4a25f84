#include <doctest.h>

#include <stdexcept>

#include "parisi/rational.hpp"

using parisi::Rational;

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("5/7") == Rational(5, 7));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("2") == Rational(2, 1));
  CHECK(Rational::parse("10/35") == Rational(2, 7));
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("0.05") == Rational(1, 20));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1."), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("rational arithmetic and ordering") {
  const Rational a(5, 7), b(2, 7);
  CHECK(a + b == Rational(1, 1));
  CHECK(Rational(1, 1) - a == b);
  CHECK(a * Rational(7, 5) == Rational(1, 1));
  CHECK(a / b == Rational(5, 2));
  CHECK(Rational(2, 7) > Rational(7, 39));
  CHECK(Rational(1, 6) < Rational(7, 39));
  CHECK(Rational(7, 39).str() == "7/39");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(4, 2).str() == "2");
}

TEST_CASE("rational value and normalization") {
  CHECK(Rational(14, 78) == Rational(7, 39));
  CHECK(Rational(5, 7).value() == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK(Rational(3, -6) == Rational(-1, 2));
}
