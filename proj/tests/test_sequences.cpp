#include <doctest.h>

#include <random>

#include "nearsq/sequences.hpp"

using namespace nearsq;

TEST_SUITE("sequences") {

TEST_CASE("initial conditions and fixed terms") {
    RecurrenceParams p3 = RecurrenceParams::classical_a(Int(3));
    CHECK(term(p3, SequenceKind::U, 0) == 0);
    CHECK(term(p3, SequenceKind::V, 0) == 2);
    CHECK(term(p3, SequenceKind::U, 1) == 1);
    CHECK(term(p3, SequenceKind::V, 1) == 3);
    CHECK(term(p3, SequenceKind::T, 0) == 1);
    CHECK(term(p3, SequenceKind::W, 0) == 1);
    CHECK(term(p3, SequenceKind::T, 1) == 2);
    CHECK(term(p3, SequenceKind::W, 1) == 4);

    // u_12(3) = 46368 = 2^5 * 3^2 * 161
    CHECK(term(p3, SequenceKind::U, 12) == 46368);
    CHECK(Int(46368) == Int(32) * 9 * 161);
    // v_5(3) = 123
    CHECK(term(p3, SequenceKind::V, 5) == 123);

    RecurrenceParams p34 = RecurrenceParams::general(Int(3), Int(-4));
    CHECK(term(p34, SequenceKind::U, 13) == 181);

    // u_11(4, -25): the naive unroll is the oracle, frozen to 1967351 = 3719 * 23^2
    RecurrenceParams p4 = RecurrenceParams::general(Int(4), Int(-25));
    Int naive = term_naive(p4, SequenceKind::U, 11);
    CHECK(naive == 1967351);
    CHECK(naive == Int(3719) * 23 * 23);
    CHECK(term(p4, SequenceKind::U, 11) == naive);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(RecurrenceParams::general(Int(0), Int(-1)), std::invalid_argument);
    CHECK_THROWS_AS(RecurrenceParams::general(Int(3), Int(0)), std::invalid_argument);
    CHECK_THROWS_AS(RecurrenceParams::with_square_b(Int(4), Int(2)), std::invalid_argument);

    RecurrenceParams pg = RecurrenceParams::general(Int(5), Int(7));
    CHECK(!pg.b1.has_value());
    CHECK_THROWS_AS(term(pg, SequenceKind::T, 3), std::invalid_argument);
    CHECK_THROWS_AS(term(pg, SequenceKind::W, 3), std::invalid_argument);
    CHECK_THROWS_AS(term(pg, SequenceKind::U, -1), std::invalid_argument);

    RecurrenceParams capped = RecurrenceParams::classical_a(Int(3));
    capped.max_index = 100;
    CHECK_THROWS_AS(term(capped, SequenceKind::U, 101), std::invalid_argument);

    // b = -b1^2 is detected on general params too
    RecurrenceParams p = RecurrenceParams::general(Int(3), Int(-4));
    REQUIRE(p.b1.has_value());
    CHECK(*p.b1 == 2);
    CHECK(p.delta == 9 - 16);
}

TEST_CASE("degenerate pairs") {
    CHECK(RecurrenceParams::with_square_b(Int(1), Int(1)).degenerate());
    CHECK(RecurrenceParams::with_square_b(Int(2), Int(1)).degenerate());  // delta = 0
    CHECK(!RecurrenceParams::with_square_b(Int(3), Int(1)).degenerate());
    CHECK(!RecurrenceParams::with_square_b(Int(1), Int(2)).degenerate());
    CHECK(!RecurrenceParams::with_square_b(Int(4), Int(5)).degenerate());
}

TEST_CASE("factor pairs") {
    RecurrenceParams p3 = RecurrenceParams::classical_a(Int(3));
    FactorPair f6 = factor_pair(p3, 6);
    CHECK(f6.left == 8);
    CHECK(f6.right == 18);
    CHECK(f6.left * f6.right == 144);
    CHECK(f6.left * f6.right == term(p3, SequenceKind::U, 6));
    CHECK(f6.common == 2);

    FactorPair f3 = factor_pair(p3, 3);
    CHECK(f3.left == 2);
    CHECK(f3.right == 4);
    CHECK(f3.left * f3.right == 8);

    RecurrenceParams p4 = RecurrenceParams::classical_a(Int(4));
    FactorPair f5 = factor_pair(p4, 5);
    CHECK(f5.left == term(p4, SequenceKind::T, 2));
    CHECK(f5.right == term(p4, SequenceKind::W, 2));
    CHECK(f5.left * f5.right == term(p4, SequenceKind::U, 5));

    CHECK_THROWS_AS(factor_pair(p3, 1), std::domain_error);
    RecurrenceParams pg = RecurrenceParams::general(Int(5), Int(3));
    CHECK_THROWS_AS(factor_pair(pg, 7), std::invalid_argument);
}

TEST_CASE("fast doubling against the naive oracle") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 400; ++trial) {
        long a = 1 + static_cast<long>(rng() % 1'000'000);
        long b = static_cast<long>(rng() % 20'001) - 10'000;
        if (b == 0) b = -1;
        if (Int(a) * a + 4 * b == 0) continue;
        RecurrenceParams p = RecurrenceParams::general(Int(a), Int(b));
        long n = static_cast<long>(rng() % 65);
        CHECK(term(p, SequenceKind::U, n) == term_naive(p, SequenceKind::U, n));
        CHECK(term(p, SequenceKind::V, n) == term_naive(p, SequenceKind::V, n));
        if (p.b1) {
            CHECK(term(p, SequenceKind::T, n) == term_naive(p, SequenceKind::T, n));
            CHECK(term(p, SequenceKind::W, n) == term_naive(p, SequenceKind::W, n));
        }
    }
}

TEST_CASE("structure identities") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        long a = 1 + static_cast<long>(rng() % 200);
        long b1 = 1 + static_cast<long>(rng() % 40);
        if (gcd(Int(a), Int(b1)) != 1) continue;
        RecurrenceParams p = RecurrenceParams::with_square_b(Int(a), Int(b1));
        long n = static_cast<long>(rng() % 40);
        LadderState s = uv_ladder(p, n);
        // u_{2n} = u_n v_n and u_{2n+1} = t_n w_n
        CHECK(term(p, SequenceKind::U, 2 * n) == s.u * s.v);
        Int t = s.u_next - Int(b1) * s.u;
        Int w = s.u_next + Int(b1) * s.u;
        CHECK(term(p, SequenceKind::U, 2 * n + 1) == t * w);
        // v_n^2 - delta u_n^2 = 4 (-b)^n
        Int nbpow = pow_ui(-p.b, static_cast<unsigned long>(n));
        CHECK(s.v * s.v - p.delta * s.u * s.u == 4 * nbpow);
    }
    // classical special case reads v_n^2 - delta u_n^2 = 4
    RecurrenceParams p5 = RecurrenceParams::classical_a(Int(5));
    for (long n = 0; n <= 30; ++n) {
        LadderState s = uv_ladder(p5, n);
        CHECK(s.v * s.v - p5.delta * s.u * s.u == 4);
    }
}

TEST_CASE("gcd tables match actual gcds") {
    // table examples
    CHECK(predicted_gcd_uv(Int(3), 3) == 2);   // a odd, 3 | n
    CHECK(predicted_gcd_uv(Int(4), 3) == 1);   // a even, n odd
    CHECK(predicted_gcd_triple(Int(5), 3) == std::array<int, 3>{3, 1, 1});

    for (long a = 3; a <= 20; ++a) {
        RecurrenceParams p = RecurrenceParams::classical_a(Int(a));
        for (long n = 1; n <= 60; ++n) {
            LadderState s = uv_ladder(p, n);
            CHECK(predicted_gcd_uv(Int(a), n) == gcd(s.u, s.v));
            Int t = s.u_next - s.u;
            Int w = s.u_next + s.u;
            CHECK(predicted_gcd_tw(Int(a), n) == gcd(t, w));
            if (a % 2 == 1 && n % 2 == 1) {
                auto tri = predicted_gcd_triple(Int(a), n);
                CHECK(Int(tri[0]) == gcd(s.u, s.v + 1));
                CHECK(Int(tri[1]) == gcd(s.u, s.v - 1));
                CHECK(Int(tri[2]) == gcd(s.v + 1, s.v - 1));
            }
        }
    }
    CHECK_THROWS_AS(predicted_gcd_uv(Int(2), 3), std::invalid_argument);
    CHECK_THROWS_AS(predicted_gcd_triple(Int(4), 3), std::invalid_argument);
    CHECK_THROWS_AS(predicted_gcd_triple(Int(5), 4), std::invalid_argument);
}

}  // TEST_SUITE
