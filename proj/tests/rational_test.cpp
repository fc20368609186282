#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pluribound/rational.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

using namespace pluribound;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
    Rational x(BigInt(6), BigInt(-4));
    CHECK(x.numerator() == -3);
    CHECK(x.denominator() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).denominator() == 1);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);

    // No drift under repeated accumulation.
    Rational sum(0);
    for (int i = 0; i < 700; ++i) sum += Rational(1, 7);
    CHECK(sum == Rational(100));
}

TEST_CASE("comparisons cross-multiply") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 3) > Rational(2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(340, 7) > Rational(48));
}

TEST_CASE("floor rounds toward minus infinity") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(6, 3).floor() == 2);
    CHECK(Rational(-6, 3).floor() == -2);
    CHECK(Rational(0).floor() == 0);
}

TEST_CASE("serialization round-trips") {
    CHECK(Rational(1, 360).str() == "1/360");
    CHECK(Rational(-11, 4).str() == "-11/4");
    CHECK(Rational(42).str() == "42");
    CHECK(Rational::parse("340/7") == Rational(340, 7));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("17") == Rational(17));

    std::mt19937_64 rng(12345);
    for (int i = 0; i < 300; ++i) {
        long long num = static_cast<long long>(rng() % 200001) - 100000;
        long long den = static_cast<long long>(rng() % 9999) + 1;
        Rational x(num, den);
        CHECK(Rational::parse(x.str()) == x);
    }
}

TEST_CASE("parse rejects malformed text") {
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("/2"), std::invalid_argument);
}

TEST_CASE("stream output matches str") {
    std::ostringstream os;
    os << Rational(5, 7);
    CHECK(os.str() == "5/7");
}

TEST_CASE("lcm of denominators") {
    CHECK(lcm_of_denominators({}) == 1);
    CHECK(lcm_of_denominators({Rational(1, 4), Rational(1, 6), Rational(3)}) == 12);
}
