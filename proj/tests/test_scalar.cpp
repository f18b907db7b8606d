#include "liesym/scalar.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using liesym::GaussianRational;
using liesym::Rational;
using testutil::G;

TEST_CASE("scalar grammar accepts documented forms") {
    CHECK(G("3/4") == GaussianRational(Rational(3, 4)));
    CHECK(G("-1/2+2/3i") == GaussianRational(Rational(-1, 2), Rational(2, 3)));
    CHECK(G("1i") == GaussianRational::i());
    CHECK(G("0") == GaussianRational());
    CHECK(G("-7") == GaussianRational(-7));
    CHECK(G("5-1i") == GaussianRational(Rational(5), Rational(-1)));
    CHECK(G("-2/3i") == GaussianRational(Rational(0), Rational(-2, 3)));
    CHECK(G(" 4/6 ") == GaussianRational(Rational(2, 3)));  // reduced form
}

TEST_CASE("scalar grammar rejects malformed input") {
    CHECK_THROWS_AS(G("1//2"), liesym::parse_error);
    CHECK_THROWS_AS(G("i"), liesym::parse_error);
    CHECK_THROWS_AS(G("+i"), liesym::parse_error);
    CHECK_THROWS_AS(G(""), liesym::parse_error);
    CHECK_THROWS_AS(G("1/0"), liesym::parse_error);
    CHECK_THROWS_AS(G("2+"), liesym::parse_error);
    CHECK_THROWS_AS(G("2+3"), liesym::parse_error);  // imaginary part needs the i suffix
    CHECK_THROWS_AS(G("1 + 2i"), liesym::parse_error);
    CHECK_THROWS_AS(G("3/4x"), liesym::parse_error);
    CHECK_THROWS_AS(G("--1"), liesym::parse_error);
}

TEST_CASE("printer emits canonical strings that round-trip") {
    for (const char* s : {"0", "3/4", "-1/2+2/3i", "1i", "-1i", "5-1i", "2/3i", "-7", "1/2-3i"}) {
        GaussianRational v = G(s);
        CHECK(v.str() == s);
        CHECK(G(v.str()) == v);
    }
    // Non-canonical spellings normalize.
    CHECK(G("4/6").str() == "2/3");
    CHECK(G("0i").str() == "0");
    CHECK(G("3+0i").str() == "3");
}

TEST_CASE("field arithmetic on random values") {
    testutil::ScalarStream rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        GaussianRational a = rng.gaussian(), b = rng.gaussian(), c = rng.gaussian();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == GaussianRational());
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
            CHECK(b * b.inverse() == GaussianRational(1));
        }
        CHECK(a * a.conj() == GaussianRational(a.norm()));
    }
}

TEST_CASE("division by zero is reported") {
    CHECK_THROWS_AS(G("1") / G("0"), liesym::error);
    CHECK_THROWS_AS(G("0").inverse(), liesym::error);
}

TEST_CASE("integrality predicates") {
    CHECK(G("4").is_integer());
    CHECK(G("4").is_even_integer());
    CHECK(!G("3").is_even_integer());
    CHECK(!G("1/2").is_integer());
    CHECK(!G("1i").is_integer());
    CHECK(!G("2+1i").is_real());
    CHECK(G("-6").to_integer() == -6);
    CHECK_THROWS_AS(G("1/2").to_integer(), liesym::error);
}

TEST_CASE("ordering is a strict total order on samples") {
    testutil::ScalarStream rng(7);
    std::vector<GaussianRational> vals;
    for (int k = 0; k < 40; ++k) vals.push_back(rng.gaussian());
    for (const auto& a : vals)
        for (const auto& b : vals) {
            int ways = (a < b) + (b < a) + (a == b);
            CHECK(ways == 1);
        }
}
