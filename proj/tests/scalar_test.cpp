#include "qdc/scalar.hpp"

#include <random>

#include "doctest.h"

using namespace qdc;

namespace {

Scalar random_symbolic(const Field& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> deg(0, 3);
    auto poly = [&](bool nonzero) {
        Scalar p = f.zero();
        int d = deg(rng);
        for (int i = 0; i <= d; ++i)
            p += f.integer(coef(rng)) * f.s_pow(i);
        if (nonzero && p.is_zero()) p = f.one();
        return p;
    };
    return poly(false) / poly(true);
}

Scalar random_quadratic(const Field& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-6, 6);
    return f.rational(Rational(coef(rng), 3)) +
           f.rational(Rational(coef(rng), 2)) * f.q_pow(1);
}

}  // namespace

TEST_CASE("q_int basics") {
    Field f = Field::symbolic();
    CHECK(f.q_int(0).is_zero());
    CHECK(f.q_int(1) == f.one());
    CHECK(f.q_int(2) == f.q_pow(1) + f.q_pow(-1));
    // oracle: (q^3 - q^-3)/(q - q^-1)
    Scalar expected = (f.q_pow(3) - f.q_pow(-3)) / (f.q_pow(1) - f.q_pow(-1));
    CHECK(f.q_int(3) == expected);
    CHECK(f.q_int(3) == f.q_pow(2) + f.one() + f.q_pow(-2));
}

TEST_CASE("q_factorial") {
    Field f = Field::symbolic();
    CHECK(f.q_factorial(0) == f.one());
    CHECK(f.q_factorial(1) == f.one());
    Scalar expected = (f.q_pow(1) + f.q_pow(-1)) *
                      (f.q_pow(2) + f.one() + f.q_pow(-2));
    CHECK(f.q_factorial(3) == expected);
}

TEST_CASE("q_binomial values and conventions") {
    Field f = Field::symbolic();
    for (long n = 0; n <= 5; ++n) CHECK(f.q_binomial(n, 0) == f.one());
    CHECK(f.q_binomial(2, 1) == f.q_pow(2) + f.one());
    CHECK(f.q_binomial(3, 1) == f.q_pow(4) + f.q_pow(2) + f.one());
    // out of range -> 0
    CHECK(f.q_binomial(3, -1).is_zero());
    CHECK(f.q_binomial(3, 4).is_zero());
}

TEST_CASE("q_binomial symmetry") {
    Field f = Field::symbolic();
    for (long n = 0; n <= 8; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(f.q_binomial(n, k) == f.q_binomial(n, n - k));
}

TEST_CASE("q-Pascal recursion for the q^2-Gaussian normalization") {
    // oracle: direct expansion of both sides via the product formula
    Field f = Field::symbolic();
    for (long n = 2; n <= 8; ++n) {
        for (long k = 1; k <= n - 1; ++k) {
            Scalar lhs = f.q_binomial(n, k);
            Scalar rhs =
                f.q_binomial(n - 1, k - 1) + f.q_pow(2 * k) * f.q_binomial(n - 1, k);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("field axioms on random symbolic samples") {
    Field f = Field::symbolic();
    std::mt19937 rng(17);
    for (int it = 0; it < 40; ++it) {
        Scalar a = random_symbolic(f, rng);
        Scalar b = random_symbolic(f, rng);
        Scalar c = random_symbolic(f, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
        CHECK(a - a == f.zero());
    }
}

TEST_CASE("field axioms on random quadratic samples") {
    Field f = Field::quadratic(Rational(3));
    std::mt19937 rng(23);
    for (int it = 0; it < 40; ++it) {
        Scalar a = random_quadratic(f, rng);
        Scalar b = random_quadratic(f, rng);
        Scalar c = random_quadratic(f, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
    }
}

TEST_CASE("quadratic minimal polynomial holds exactly") {
    for (int t : {3, -7, 5}) {
        Field f = Field::quadratic(Rational(t));
        Scalar q = f.q_pow(1);
        CHECK((q * q + f.integer(t) * q + f.one()).is_zero());
        // q * q^-1 = 1 and q^-1 = -tau - q
        CHECK(q * f.q_pow(-1) == f.one());
        CHECK(f.q_pow(-1) == -f.integer(t) - q);
    }
}

TEST_CASE("quadratic field rejects root-of-unity traces") {
    for (int t : {-2, -1, 0, 1, 2})
        CHECK_THROWS_AS(Field::quadratic(Rational(t)), RootOfUnity);
    CHECK_NOTHROW(Field::quadratic(Rational(5, 2)));
}

TEST_CASE("parse_scalar grammar") {
    Field f = Field::symbolic();
    CHECK(f.parse("s + s^-1") == f.s_pow(1) + f.s_pow(-1));
    CHECK(f.parse("q^2+1") == f.q_pow(2) + f.one());
    CHECK(f.parse("q") == f.s_pow(2));
    CHECK(f.parse("2 q^2") == f.integer(2) * f.q_pow(2));
    CHECK(f.parse("-3/2*s^3") == f.rational(Rational(-3, 2)) * f.s_pow(3));
    CHECK(f.parse("(s+1)(s-1)") == f.q_pow(1) - f.one());
    CHECK(f.parse("(s+1)^-1 (s+1)") == f.one());
    CHECK(f.parse("1 - 2 - 3") == f.integer(-4));

    Field g = Field::quadratic(Rational(-7));
    Scalar v = g.parse("3/2 * q");
    CHECK(v == g.rational(Rational(3, 2)) * g.q_pow(1));
    CHECK_THROWS_AS(g.parse("s + 1"), HalfPowerUnsupported);

    CHECK_THROWS_AS(f.parse("q^"), ParseError);
    CHECK_THROWS_AS(f.parse("(q"), ParseError);
    CHECK_THROWS_AS(f.parse("x"), ParseError);
    try {
        f.parse("1 + %");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("printing round-trips through the grammar") {
    Field f = Field::symbolic();
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        Scalar a = random_symbolic(f, rng);
        CHECK(f.parse(a.to_string()) == a);
    }
    Field g = Field::quadratic(Rational(3));
    std::mt19937 rng2(7);
    for (int it = 0; it < 30; ++it) {
        Scalar a = random_quadratic(g, rng2);
        CHECK(g.parse(a.to_string()) == a);
    }
    CHECK(f.zero().to_string() == "0");
    CHECK((f.q_pow(1) + f.q_pow(-1)).to_string() == "s^2 + s^-2");
}
