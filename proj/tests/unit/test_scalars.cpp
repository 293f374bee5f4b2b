#include <doctest.h>

#include "l2a/scalars.hpp"

using namespace l2a;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2")) == "-2");
  CHECK(to_string(parse_rational(" 3 / -9 ")) == "-1/3");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1.5"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("polynomial arithmetic") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * x * y - Poly(2, Rational(1, 3));
  CHECK(p.str() == "x1^2*x2 - 1/3");
  CHECK(Poly::parse("x1^2*x2 - 1/3", 2) == p);
  CHECK(Poly::parse(p.str(), 2) == p);
  CHECK((p - p).is_zero());
  CHECK(p.partial(0) == 2 * x * y);
  CHECK(p.partial(1) == x * x);
  CHECK(p.evaluate({Rational(2), Rational(3)}) == Rational(35, 3));
  CHECK(p.total_degree() == 3);
}

TEST_CASE("bare rationals adapt to the other operand") {
  Poly c(0, Rational(5));
  Poly x = Poly::variable(3, 2);
  CHECK((c * x).nvars() == 3);
  CHECK((x + c).constant_term() == 5);
  CHECK(c == Poly(3, Rational(5)));
  CHECK_THROWS(Poly::variable(2, 0) + Poly::variable(3, 0));
}

TEST_CASE("polynomial parse errors") {
  CHECK_THROWS(Poly::parse("x3", 2));
  CHECK_THROWS(Poly::parse("x1**x2", 2));
  CHECK_THROWS(Poly::parse("y", 2));
}
