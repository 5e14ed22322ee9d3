#include "doctest.h"
#include "sumset/rational.hpp"

using namespace sumset;

TEST_CASE("parse_rational reduces to lowest terms") {
  CHECK(to_string(parse_rational("6/8")) == "3/4");
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK(to_string(parse_rational("5")) == "5/1");
  CHECK(to_string(parse_rational("0/7")) == "0/1");
}

TEST_CASE("parse_rational rejects malformed text") {
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("0.5"), InputError);
  CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("a/b"), InputError);
}

TEST_CASE("floor rounds toward minus infinity") {
  CHECK(floor(make_rational(7, 2)) == 3);
  CHECK(floor(make_rational(-7, 2)) == -4);
  CHECK(floor(Rational(5)) == 5);
}

TEST_CASE("pow, min, max") {
  CHECK(pow(make_rational(1, 2), 3) == make_rational(1, 8));
  CHECK(pow(Rational(3), 0) == 1);
  CHECK(min(Rational(1), Rational(2)) == 1);
  CHECK(max(Rational(1), Rational(2)) == 2);
}

TEST_CASE("checked integer arithmetic") {
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(-4, 5) == -20);
  CHECK_THROWS(checked_add(INT64_MAX, 1));
  CHECK_THROWS(checked_mul(INT64_MAX / 2 + 1, 2));
  CHECK(lcm64(4, 6) == 12);
  CHECK_THROWS(to_int64(Integer("100000000000000000000")));
}

TEST_CASE("RationalScalar") {
  auto t = RationalScalar::parse("1/3");
  CHECK(t.numerator() == 1);
  CHECK(t.denominator() == 3);
  CHECK(t.complement() == RationalScalar(2, 3));
  CHECK_NOTHROW(t.require_open_unit());
  CHECK_THROWS_AS(RationalScalar(0, 1).require_open_unit(), InputError);
  CHECK_THROWS_AS(RationalScalar(1, 1).require_open_unit(), InputError);
  CHECK(to_string(RationalScalar(2, 4)) == "1/2");
}
