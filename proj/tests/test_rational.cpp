#include <catch_amalgamated.hpp>

#include "thetak/rational.hpp"

#include <random>

using namespace thetak;

TEST_CASE("rational canonical form") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-3).str() == "-3");
}

TEST_CASE("gaussian rational defining relation i*i = -1") {
    GQ i = GQ::i();
    CHECK(field_ops(i, i, FieldOp::mul) == GQ(-1));
}

TEST_CASE("gaussian rational add halves") {
    CHECK(field_ops(GQ(Rational(1, 2)), GQ(Rational(1, 2)), FieldOp::add) == GQ(1));
}

TEST_CASE("gaussian rational division (1+i)/(1-i) = i") {
    GQ a(Rational(1), Rational(1));
    GQ b(Rational(1), Rational(-1));
    // hand oracle: multiply by the conjugate: (1+i)^2 / |1-i|^2 = 2i/2 = i
    CHECK(field_ops(a, b, FieldOp::div) == GQ::i());
}

TEST_CASE("division by zero is an explicit error") {
    CHECK_THROWS_AS(field_ops(GQ(1), GQ(0), FieldOp::div), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("field axioms on random small values") {
    std::mt19937 rng(20240811);
    auto rnd = [&]() {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
        return GQ(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    };
    for (int t = 0; t < 200; ++t) {
        GQ a = rnd(), b = rnd(), c = rnd();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}
