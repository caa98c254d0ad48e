#include <catch2/catch_amalgamated.hpp>

#include "floercurves/field.hpp"

using namespace floer;

TEST_CASE("F2 arithmetic") {
    CHECK(F2(1) + F2(1) == F2(0));
    CHECK(F2(1) * F2(1) == F2(1));
    CHECK(F2(1).inverse() == F2(1));
    CHECK(F2(3) == F2(1));
    CHECK(F2(-1) == F2(1));
    CHECK_THROWS(F2(0).inverse());
}

TEST_CASE("Rational arithmetic") {
    Rational a(2, 4);
    CHECK(a == Rational(1, 2));
    CHECK(a + a == Rational(1));
    CHECK(Rational(1, 3) * Rational(3) == Rational(1));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(1, -2).num() == -1);
    CHECK((Rational(5) / Rational(10)) == Rational(1, 2));
    CHECK(Rational(2, 3).inverse() == Rational(3, 2));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1) / Rational(0));
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS(Rational::parse("x"));
    CHECK(Rational(1, 2).str() == "1/2");
}

TEST_CASE("Rational overflow detection") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}
