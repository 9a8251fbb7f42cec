#include "cmt/rational.hpp"

#include <doctest.h>

using cmt::Rational;

TEST_CASE("rationals reduce and compare exactly") {
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(2, 6).numerator() == 1);
    CHECK(Rational(2, 6).denominator() == 3);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(0) <= Rational(0));
    CHECK((Rational(1, 3) - Rational(1, 2)).abs() == Rational(1, 6));
}

TEST_CASE("parsing fractions, integers and decimals") {
    CHECK(*Rational::parse("2/3") == Rational(2, 3));
    CHECK(*Rational::parse("1") == Rational(1));
    CHECK(*Rational::parse("0.5") == Rational(1, 2));
    CHECK(*Rational::parse("1.02") == Rational(51, 50));
    CHECK(*Rational::parse("-0.25") == Rational(-1, 4));
    CHECK(*Rational::parse("3.02") - *Rational::parse("3") == Rational(1, 50));
    CHECK(!Rational::parse(""));
    CHECK(!Rational::parse("a"));
    CHECK(!Rational::parse("1/0"));
    CHECK(!Rational::parse("1.2.3"));
    CHECK(!Rational::parse("1/2/3"));
}

TEST_CASE("printing is reduced, integers drop the denominator") {
    CHECK(Rational(2, 6).str() == "1/3");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(0).str() == "0");
    CHECK(Rational(-1, 2).str() == "-1/2");
}
