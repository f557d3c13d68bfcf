#include "cfx/rational.hpp"

#include "cfx/errors.hpp"

#include <doctest.h>

using namespace cfx;

TEST_CASE("rationals are stored in lowest terms with positive denominator") {
  CHECK(make_rational(2, 4) == Rational(1, 2));
  CHECK(make_rational(-2, 4) == make_rational(1, -2));
  CHECK(numerator(make_rational(1, -2)) == -1);
  CHECK(denominator(make_rational(1, -2)) == 2);
  CHECK(denominator(make_rational(0, -7)) == 1);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic and comparison are exact") {
  CHECK(Rational(1, 3) * 3 == 1);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(693, 65184) == Rational(33, 3104));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(623, 24) >= 1);
}

TEST_CASE("parse_rational accepts num/den and integers") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("42") == 42);
  CHECK(parse_rational("+5") == 5);
  CHECK(parse_rational("6/4") == Rational(3, 2));
}

TEST_CASE("parse_rational rejects anything else") {
  CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/ 2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1//2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
}

TEST_CASE("to_string emits canonical form") {
  CHECK(to_string(Rational(1, 2)) == "1/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(make_rational(1, -2)) == "-1/2");
  CHECK(parse_rational(to_string(Rational(97, 3))) == Rational(97, 3));
}
