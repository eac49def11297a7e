#include "k3series/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace k3series;

TEST_CASE("rationals reduce to lowest terms with positive denominator") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(21, 7) == Rational(3));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);

    // no drift over many operations
    Rational s(0);
    for (int k = 1; k <= 50; ++k) s += Rational(1, k) - Rational(1, k);
    CHECK(s.is_zero());
}

TEST_CASE("rational predicates, powers, parsing and printing") {
    CHECK(Rational(4, 2).is_integer());
    CHECK(Rational(4, 2).as_integer() == 2);
    CHECK_FALSE(Rational(1, 2).is_integer());
    CHECK_THROWS_AS(Rational(1, 2).as_integer(), std::domain_error);
    CHECK(Rational(-2, 3).pow(3) == Rational(-8, 27));
    CHECK(Rational(5).pow(0) == Rational(1));
    CHECK(Rational::from_string("-8/6") == Rational(-4, 3));
    CHECK(Rational::from_string("42") == Rational(42));
    CHECK(Rational(-4, 3).str() == "-4/3");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("big integers stay exact") {
    Rational big = Rational(Integer("123456789012345678901234567890"), Integer(2));
    CHECK((big * Rational(2)).num() == Integer("123456789012345678901234567890"));
    CHECK(factorial(20) == Integer("2432902008176640000"));
    CHECK(binomial(52, 5) == 2598960);
    CHECK(binomial(3, 5) == 0);
}
