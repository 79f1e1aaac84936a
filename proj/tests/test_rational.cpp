#include "cycleweave/rational.hpp"

#include <doctest.h>

#include <random>

using namespace cycleweave;

TEST_CASE("construction reduces and normalizes sign") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("parse") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational::parse("1/"));
}

TEST_CASE("comparison agrees with int64 cross multiplication on small values") {
    std::mt19937_64 rng(12345);
    auto draw = [&]() {
        auto num = static_cast<std::int64_t>(rng() % 2001) - 1000;
        auto den = static_cast<std::int64_t>(rng() % 999) + 1;
        return std::pair(num, den);
    };
    for (int i = 0; i < 5000; ++i) {
        auto [an, ad] = draw();
        auto [bn, bd] = draw();
        Rational a(an, ad), b(bn, bd);
        std::int64_t lhs = an * bd, rhs = bn * ad;
        int expected = lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
        CHECK(a.cmp(b) == expected);
    }
}

TEST_CASE("comparison at extreme magnitudes does not overflow") {
    // straight cross multiplication of these would need > 128 bits
    Rational big1(int128_from_string("170141183460469231731687303715884105727"), 3);
    Rational big2(int128_from_string("170141183460469231731687303715884105725"), 3);
    CHECK(big1 > big2);
    Rational tiny1(1, int128_from_string("170141183460469231731687303715884105727"));
    Rational tiny2(2, int128_from_string("170141183460469231731687303715884105727"));
    CHECK(tiny1 < tiny2);
    CHECK(big1 > tiny1);
    CHECK(tiny1 < Rational(1));
}

TEST_CASE("arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK_THROWS(Rational(1) / Rational(0));
    CHECK(pow_rational(Rational(3, 2), 5) == Rational(243, 32));
    CHECK(pow_rational(Rational(2), -2) == Rational(1, 4));
}

TEST_CASE("floor and ceil") {
    CHECK(Rational(7, 2).floor_int() == 3);
    CHECK(Rational(7, 2).ceil_int() == 4);
    CHECK(Rational(-7, 2).floor_int() == -4);
    CHECK(Rational(-7, 2).ceil_int() == -3);
    CHECK(Rational(6).floor_int() == 6);
    CHECK(Rational(6).ceil_int() == 6);
}

TEST_CASE("overflow in arithmetic throws instead of wrapping") {
    Rational huge(int128_from_string("170141183460469231731687303715884105727"), 1);
    CHECK_THROWS_AS(huge * huge, std::overflow_error);
}

TEST_CASE("string round trip") {
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-5).str() == "-5");
    CHECK(Rational::parse(Rational(123456789, 987654321).str()) == Rational(123456789, 987654321));
    CHECK(int128_to_string(int128_from_string("-170141183460469231731687303715884105728")) ==
          "-170141183460469231731687303715884105728");
}
