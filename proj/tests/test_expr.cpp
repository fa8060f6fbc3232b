#include "doctest.h"

#include <cmath>

#include "qwalls/expr.hpp"

using namespace qwalls;

TEST_CASE("expression parsing and evaluation") {
    CHECK(Expr::parse("1 + 2*3").eval(0.0) == 7.0);
    CHECK(Expr::parse("(1 + 2)*3").eval(0.0) == 9.0);
    CHECK(Expr::parse("2^3^2").eval(0.0) == 512.0);  // right associative
    CHECK(Expr::parse("-t^2").eval(3.0) == -9.0);
    CHECK(Expr::parse("1 + 0.1*sin(t)").eval(0.5) == doctest::Approx(1.0 + 0.1 * std::sin(0.5)));
    CHECK(Expr::parse("pi").eval(0.0) == doctest::Approx(M_PI));
    CHECK(Expr::parse("exp(-t)*cos(2*pi*t)").eval(0.25) ==
          doctest::Approx(std::exp(-0.25) * std::cos(M_PI / 2)));
    CHECK(Expr::parse("sqrt(abs(-4))").eval(0.0) == 2.0);
}

TEST_CASE("expression errors carry positions") {
    CHECK_THROWS_AS(Expr::parse("1 +"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("foo(2)"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("sin 2"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("(1+2"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("1 2"), std::invalid_argument);
}
