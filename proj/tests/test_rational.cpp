#include <doctest.h>

#include "prodiff/rational.hpp"

using namespace prodiff;

TEST_CASE("parse_rational accepts integers and fractions and reduces them")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("+5") == 5);
    CHECK(parse_rational("2/4") == make_rational(1, 2));
    CHECK(parse_rational("-6/9") == make_rational(-2, 3));
    CHECK(parse_rational("0/5") == 0);
    CHECK(parse_rational("123456789012345678901234567890") ==
          Rational(Integer("123456789012345678901234567890")));
}

TEST_CASE("parse_rational rejects malformed text")
{
    for (const char* bad : {"", "1/0", "1/-2", "abc", "1.5", "1/", "/2", " 1", "1 ", "--1", "1/2/3", "0x10"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
    }
}

TEST_CASE("to_string is canonical and round-trips")
{
    CHECK(to_string(make_rational(4, 2)) == "2");
    CHECK(to_string(make_rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(0)) == "0");
    for (const char* s : {"1/3", "-22/7", "0", "99"}) CHECK(to_string(parse_rational(s)) == s);
}

TEST_CASE("make_rational canonicalizes and rejects zero denominators")
{
    const Rational r = make_rational(10, -4);
    CHECK(r.get_num() == -5);
    CHECK(r.get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), PreconditionError);
}

TEST_CASE("factorial, pow and abs")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(1) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(factorial(20) == Integer("2432902008176640000"));
    CHECK(pow(make_rational(2, 3), 3) == make_rational(8, 27));
    CHECK(pow(Rational(-2), 0) == 1);
    CHECK(abs(make_rational(-5, 7)) == make_rational(5, 7));
}

TEST_CASE("sqrt_upper brackets the square root tightly")
{
    for (const Rational& v : {Rational(2), make_rational(1, 3), Rational(16), Rational(0)}) {
        const Rational s = sqrt_upper(v, 40);
        CHECK(s * s >= v);
        const Rational below = s - pow(make_rational(1, 2), 40);
        CHECK((below < 0 || below * below <= v));
    }
    CHECK(sqrt_upper(Rational(9)) >= 3);
}

TEST_CASE("round_up_dyadic returns the least dyadic above the value")
{
    const Rational third = make_rational(1, 3);
    const Rational r = round_up_dyadic(third, 10);
    CHECK(r >= third);
    CHECK(r - make_rational(1, 1024) < third);
    CHECK(round_up_dyadic(make_rational(3, 4), 10) == make_rational(3, 4));
    CHECK(round_up_dyadic(make_rational(-1, 3), 2) == make_rational(-1, 4));
}
