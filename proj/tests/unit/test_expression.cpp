#include <doctest.h>

#include "helpers.hpp"
#include "liespray/expression.hpp"

using namespace liespray;
using liespray::testing::vec2;

TEST_CASE("expression parsing and evaluation") {
  auto e = Expression::parse("2 + 3 * u1^2 - u2 / 4", 2);
  CHECK(e.eval(vec2(2.0, 8.0)) == doctest::Approx(2 + 12 - 2).epsilon(1e-15));

  CHECK(Expression::parse("2 + 3 * 4 ^ 2", 1).eval(Vector::Ones(1)) == 50.0);
  CHECK(Expression::parse("-u1^2", 1).eval(Vector::Ones(1)) == -1.0);   // unary binds last
  CHECK(Expression::parse("(-u1)^2", 1).eval(Vector::Ones(1)) == 1.0);
  CHECK(Expression::parse("sqrt(u1*u1 + u2*u2)", 2).eval(vec2(3, 4)) ==
        doctest::Approx(5.0).epsilon(1e-15));
  CHECK(Expression::parse("abs(u1 - u2)", 2).eval(vec2(1, 4)) == 3.0);
  CHECK(Expression::parse("u1^-1", 1).eval(2.0 * Vector::Ones(1)) == 0.5);
}

TEST_CASE("expression errors carry position info") {
  CHECK_THROWS_AS(Expression::parse("u3 + 1", 2), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("foo(u1)", 2), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("u1 + ", 2), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("u1 u2", 2), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("u1 ^ u2", 2), ExpressionError);  // non-const exponent
  CHECK_THROWS_AS(Expression::parse("1 / u1", 1).eval(Vector::Zero(1)),
                  ExpressionError);
  CHECK_THROWS_AS(Expression::parse("sqrt(-u1)", 1).eval(Vector::Ones(1)),
                  ExpressionError);
}

TEST_CASE("symbolic derivatives match finite differences") {
  auto f = Expression::parse("u1^3 * u2 + sqrt(u1^2 + u2^2) - abs(u2) * u1", 2);
  auto d1 = f.derivative(0);
  auto d2 = f.derivative(1);
  Vector y = vec2(1.3, -0.7);
  const double h = 1e-6;
  auto fd = [&](int var) {
    Vector hp = y, hm = y;
    hp[var] += h;
    hm[var] -= h;
    return (f.eval(hp) - f.eval(hm)) / (2 * h);
  };
  CHECK(d1.eval(y) == doctest::Approx(fd(0)).epsilon(1e-8));
  CHECK(d2.eval(y) == doctest::Approx(fd(1)).epsilon(1e-8));
}

TEST_CASE("polynomial detection and exact derivative") {
  auto p = Expression::parse("u2^2", 2);
  CHECK(p.is_polynomial());
  CHECK_FALSE(Expression::parse("sqrt(u1)", 2).is_polynomial());
  // d/du2 (u2^2) = 2 u2, exact
  CHECK(p.derivative(1).eval(vec2(0.0, 3.0)) == 6.0);
  CHECK(p.derivative(0).eval(vec2(5.0, 3.0)) == 0.0);
}
