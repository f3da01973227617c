#include <doctest.h>

#include "nearsq/ball.hpp"

using namespace nearsq;

TEST_SUITE("ball") {

TEST_CASE("construction and containment") {
    Ball two = Ball::exact(2, 128);
    Ball r = two.sqrt();
    CHECK(r.valid());
    CHECK((r * r).contains_ratio(Int(2), Int(1)));
    CHECK(r.square().contains_ratio(Int(2), Int(1)));

    Ball half = Ball::ratio(1, 2, 128);
    CHECK(half.contains_ratio(Int(1), Int(2)));
    CHECK(half.width_exponent() == LONG_MIN);  // exactly representable

    Ball third = Ball::ratio(1, 3, 128);
    CHECK(third.contains_ratio(Int(1), Int(3)));
    CHECK(third.width_exponent() < -120);
}

TEST_CASE("tri-state comparisons") {
    Ball a = Ball::ratio(1, 3, 128);
    Ball b = Ball::ratio(1, 2, 128);
    CHECK(a.less(b) == Truth::True);
    CHECK(b.less(a) == Truth::False);
    CHECK(a.less(a) == Truth::Unknown);  // overlapping enclosures
    CHECK(Ball::exact(1, 64).less(Ball::exact(1, 64)) == Truth::False);

    Ball wide = Ball::whole_line(64);
    CHECK(wide.less(b) == Truth::Unknown);
    CHECK(wide.sign() == Truth::Unknown);
    CHECK(Ball::exact(-3, 64).sign() == Truth::False);
    CHECK(Ball::exact(3, 64).sign() == Truth::True);
}

TEST_CASE("pi and atan") {
    Ball pi = Ball::pi(192);
    Ball four_atan1 = 4 * Ball::exact(1, 192).atan();
    CHECK((pi - four_atan1).contains_zero());
    CHECK((pi - four_atan1).width_exponent() < -180);
    // 3.14159 < pi < 3.1416
    CHECK(Ball::ratio(314159, 100000, 192).less(pi) == Truth::True);
    CHECK(pi.less(Ball::ratio(31416, 10000, 192)) == Truth::True);
}

TEST_CASE("log exp round trip") {
    Ball x = Ball::ratio(7, 3, 192);
    Ball y = x.log().exp();
    CHECK((y - x).contains_zero());
    CHECK((y - x).width_exponent() < -180);
    // domain guards produce the whole line, not wrong numbers
    CHECK(!Ball::exact(-1, 64).log().valid());
    CHECK(!Ball::exact(-1, 64).sqrt().valid());
    CHECK(!(Ball::exact(1, 64) / Ball::exact(0, 64)).valid());
}

TEST_CASE("precision doubling shrinks enclosures") {
    long w1 = Ball::exact(2, 128).sqrt().width_exponent();
    long w2 = Ball::exact(2, 256).sqrt().width_exponent();
    long w3 = Ball::exact(2, 512).sqrt().width_exponent();
    CHECK(w2 < w1 - 100);
    CHECK(w3 < w2 - 200);
}

TEST_CASE("floor certification") {
    Int f;
    CHECK(Ball::ratio(5, 2, 128).floor_certified(f));
    CHECK(f == 2);
    CHECK(Ball::ratio(-5, 2, 128).floor_certified(f));
    CHECK(f == -3);
    CHECK(Ball::exact(7, 128).floor_certified(f));
    CHECK(f == 7);
    // an enclosure straddling an integer cannot certify its floor
    Ball x = Ball::exact(1, 64) - Ball::exact(1, 64).sqrt().square();
    Ball three = Ball::exact(3, 64) + x;  // 3 +/- tiny
    (void)three;
    Ball fuzzy = Ball::from_endpoints(Ball::ratio(29, 10, 64).lo(),
                                      Ball::ratio(31, 10, 64).hi(), 64);
    CHECK(!fuzzy.floor_certified(f));
}

TEST_CASE("interval multiplication covers sign cases") {
    Ball a = Ball::from_endpoints(Ball::exact(-2, 64).lo(), Ball::exact(3, 64).hi(), 64);
    Ball b = Ball::from_endpoints(Ball::exact(-5, 64).lo(), Ball::exact(7, 64).hi(), 64);
    Ball p = a * b;
    // extremes: -2*7 = -14, 3*-5 = -15, 3*7 = 21, -2*-5 = 10
    CHECK(p.contains_ratio(Int(-15), Int(1)));
    CHECK(p.contains_ratio(Int(21), Int(1)));
    CHECK(!p.contains_ratio(Int(22), Int(1)));
    CHECK(!p.contains_ratio(Int(-16), Int(1)));
}

TEST_CASE("pow variants") {
    Ball b = Ball::exact(3, 128);
    CHECK(b.pow_ui(5).contains_ratio(Int(243), Int(1)));
    Ball e = Ball::ratio(1, 2, 128);
    Ball s = b.pow(e);
    CHECK((s - b.sqrt()).contains_zero());
}

}  // TEST_SUITE
