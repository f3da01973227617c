#include <doctest.h>

#include <algorithm>

#include "nearsq/oracles.hpp"

using namespace nearsq;

namespace {

// shifted-order re-run: iterate the box downward and compare the solution set
std::vector<std::pair<Int, Int>> search_descending(const QuarticForm& form, const Int& bound) {
    std::vector<std::pair<Int, Int>> out;
    for (Int x = bound; x >= 0; --x) {
        Int xd = x * x;
        if (form.d == 4) xd *= xd;
        Int rhs = form.A * xd + form.B;
        if (sgn(rhs) * sgn(form.C) < 0) continue;
        Int y2, rem;
        mpz_fdiv_qr(y2.get_mpz_t(), rem.get_mpz_t(), rhs.get_mpz_t(), form.C.get_mpz_t());
        if (rem != 0 || !is_square(y2)) continue;
        out.emplace_back(x, isqrt(y2));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("standard battery matches the expected solution sets") {
    for (const OracleCase& oc : standard_quartic_battery()) {
        INFO(oc.name);
        auto sols = search_quartic(oc.form, oc.bound);
        CHECK(sols == oc.expected);
        CHECK(sols == search_descending(oc.form, oc.bound));
    }
}

TEST_CASE("modular obstructions") {
    // x^4 - 3 = y^2 is impossible mod 5
    CHECK(modular_obstruction({Int(1), 4, Int(-3), Int(1)}, 5) == Obstruction::Obstructed);
    // x^2 - 2 = 3 y^2 is impossible mod 3
    CHECK(modular_obstruction({Int(1), 2, Int(-2), Int(3)}, 3) == Obstruction::Obstructed);
    // x^2 - 2 = y^2 is impossible mod 4
    CHECK(modular_obstruction({Int(1), 2, Int(-2), Int(1)}, 4) == Obstruction::Obstructed);
    // a solvable congruence stays inconclusive
    CHECK(modular_obstruction({Int(2), 4, Int(-1), Int(1)}, 5) == Obstruction::Inconclusive);

    // obstructed forms can never have search hits
    for (QuarticForm f : {QuarticForm{Int(1), 4, Int(-3), Int(1)},
                          QuarticForm{Int(1), 2, Int(-2), Int(3)},
                          QuarticForm{Int(1), 2, Int(-2), Int(1)}}) {
        bool obstructed = false;
        for (long m = 3; m <= 16; ++m)
            if (modular_obstruction(f, m) == Obstruction::Obstructed) obstructed = true;
        REQUIRE(obstructed);
        CHECK(search_quartic(f, Int(300)).empty());
    }
}

TEST_CASE("polynomial square families") {
    // a^3 - 3a - 1 = y^2 has integer solutions only at a = -1, 2 in the box
    auto sols = search_poly_square({Int(-1), Int(-3), Int(0), Int(1)}, Int(1), -10, 10'000);
    REQUIRE(sols.size() == 2);
    CHECK(sols[0] == std::pair<Int, Int>(-1, 1));
    CHECK(sols[1] == std::pair<Int, Int>(2, 1));

    // a^4 - 4a^2 + 2 = 2y^2 only at (2, 1) for a >= 2
    auto sols2 =
        search_poly_square({Int(2), Int(0), Int(-4), Int(0), Int(1)}, Int(2), 2, 10'000);
    REQUIRE(sols2.size() == 1);
    CHECK(sols2[0] == std::pair<Int, Int>(2, 1));
}

TEST_CASE("companion value exclusion") {
    CHECK(search_v_equals(Int(338), 3, 20, 3, 1000).empty());
    // sanity: the searcher does find planted values
    auto hits = search_v_equals(Int(123), 1, 10, 3, 10);  // v_5(3) = 123
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == std::pair<long, long>(5, 3));
}

}  // TEST_SUITE
