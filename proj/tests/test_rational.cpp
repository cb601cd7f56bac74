#include "qsdes/rational.hpp"

#include <doctest.h>

using qsdes::Int128;
using qsdes::Rational;

TEST_CASE("rational arithmetic normalizes") {
    Rational a(2, 10);
    CHECK(a == Rational(1, 5));
    CHECK((a + Rational(3, 10)) == Rational(1, 2));
    CHECK((Rational(1, 3) * Rational(3, 7)) == Rational(1, 7));
    CHECK((Rational(1, 2) - Rational(1, 2)) == Rational(0));
    CHECK((Rational(-1, 2)).abs() == Rational(1, 2));
    CHECK(Rational(5, -10) == Rational(-1, 2));
}

TEST_CASE("rational comparison is exact for large operands") {
    // Adjacent fractions with ~1e18 denominators; doubles cannot tell them apart.
    Int128 big = Int128(1000000000000000003LL);
    Rational a(big, big + 1);
    Rational b(big + 1, big + 2);
    CHECK(a < b);
    CHECK(b > a);
    CHECK(a != b);
    CHECK(a.to_double() == doctest::Approx(1.0));
}

TEST_CASE("decimal renderings") {
    CHECK(Rational(1, 5).to_decimal(6) == "0.2");
    CHECK(Rational(1, 3).to_decimal(4) == "0.3333");
    CHECK(Rational(1, 3).to_fixed(3) == "0.333");
    CHECK(Rational(1, 7).to_fixed(3) == "0.143");
    CHECK(Rational(2, 3).to_fixed(3) == "0.667");
    CHECK(Rational(999, 1000).to_fixed(2) == "1.00");
    CHECK(Rational(-1, 8).to_decimal(6) == "-0.125");
    CHECK(Rational(0).to_decimal(6) == "0");
    CHECK(Rational(1999, 1000).to_decimal(2) == "2");  // rounds and carries
}

TEST_CASE("from_double is exact for dyadic values") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.046875) == Rational(3, 64));
    CHECK(Rational::from_double(3.0) == Rational(3));
    double snapped = std::ldexp(std::nearbyint(std::ldexp(0.05, 30)), -30);
    Rational r = Rational::from_double(snapped);
    CHECK(r.to_double() == doctest::Approx(0.05).epsilon(1e-8));
}
