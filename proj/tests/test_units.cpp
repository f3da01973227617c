#include <doctest.h>

#include <random>

#include "nearsq/units.hpp"

using namespace nearsq;

TEST_SUITE("units") {

TEST_CASE("resultant routes agree") {
    std::mt19937_64 rng(23);
    auto rnd_poly = [&](int deg) {
        ZPoly p(static_cast<std::size_t>(deg) + 1);
        for (auto& c : p) c = Int(static_cast<long>(rng() % 101) - 50);
        if (p.back() == 0) p.back() = 1;
        return p;
    };
    for (int trial = 0; trial < 300; ++trial) {
        ZPoly f = rnd_poly(1 + static_cast<int>(rng() % 4));
        ZPoly g = rnd_poly(1 + static_cast<int>(rng() % 4));
        CHECK(resultant(f, g) == resultant_sylvester(f, g));
    }
    // fixed small cases
    ZPoly f = {Int(-1), Int(0), Int(1)};  // x^2 - 1
    ZPoly g = {Int(-2), Int(1)};          // x - 2
    CHECK(resultant(f, g) == 3);
    CHECK(resultant_sylvester(f, g) == 3);
}

TEST_CASE("norms of the claimed generators") {
    // theta + 1 at a = 5: resultant of X^4 - 7X^2 + 7 and X + 1
    ZPoly f = {Int(7), Int(0), Int(-7), Int(0), Int(1)};
    ZPoly g = {Int(1), Int(1)};
    CHECK(abs(resultant(f, g)) == 1);

    OrderElement theta_plus{Generator::Theta, 5, Int(1), Int(1), Int(0), Int(0)};
    CHECK(abs(absolute_norm(theta_plus)) == 1);

    // norm of theta itself is a + 2 up to sign
    OrderElement theta{Generator::Theta, 5, Int(0), Int(1), Int(0), Int(0)};
    CHECK(abs(absolute_norm(theta)) == 7);

    // mu for a range of c
    for (long c = 2; c <= 40; ++c) {
        OrderElement mu{Generator::Theta, c * c + 1, Int(-1), Int(c), Int(1), Int(0)};
        CHECK(abs(absolute_norm(mu)) == 1);
        OrderElement c_plus{Generator::Xi, c * c + 1, Int(c), Int(1), Int(0), Int(0)};
        CHECK(abs(absolute_norm(c_plus)) == 1);
    }
    for (long a = 4; a <= 40; ++a) {
        OrderElement one_plus{Generator::Phi, a, Int(1), Int(1), Int(0), Int(0)};
        CHECK(abs(absolute_norm(one_plus)) == 1);
        OrderElement beta{Generator::Phi, a, Int(1), Int(0), Int(-1), Int(0)};
        CHECK(abs(absolute_norm(beta)) == 1);
    }
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        long c = 2 + static_cast<long>(rng() % 8);
        long a = c * c + 1;
        Generator gen = trial % 3 == 0   ? Generator::Theta
                        : trial % 3 == 1 ? Generator::Phi
                                         : Generator::Xi;
        auto rnd = [&]() { return Int(static_cast<long>(rng() % 2001) - 1000); };
        OrderElement e{gen, a, rnd(), rnd(), rnd(), rnd()};
        OrderElement f{gen, a, rnd(), rnd(), rnd(), rnd()};
        CHECK(absolute_norm(multiply(e, f)) == absolute_norm(e) * absolute_norm(f));
    }
}

TEST_CASE("unit group reports") {
    UnitGroupReport t2 = check_theta_units(2, 256);
    CHECK(t2.ok());
    CHECK(t2.generators.size() == 3);
    CHECK(t2.independence.rank == 3);
    for (const auto& g : t2.generators) CHECK(abs(g.norm) == 1);

    UnitGroupReport p4 = check_phi_units(4, 256);
    CHECK(p4.ok());
    CHECK(p4.independence.rank == 2);

    UnitGroupReport x3 = check_xi_units(3, 256);
    CHECK(x3.ok());

    UnitSweepReport sweep = verify_unit_groups(2, 12, 4, 12, 256);
    CHECK(sweep.ok());
    CHECK(sweep.reports.size() == 11 + 9 + 11);
}

TEST_CASE("conjugation identities at small c") {
    for (long c = 2; c <= 6; ++c) {
        ConjugationReport rep = verify_conjugation_table(c, 192);
        INFO("c = ", c);
        CHECK(rep.ok());
        CHECK(rep.identities.size() == 9);
    }
}

TEST_CASE("quadratic footnote case a = 3") {
    // Z[alpha] at a = 3: alpha - 1 is a unit and (alpha-1)^2 = alpha
    ZPoly f = {Int(1), Int(-3), Int(1)};  // x^2 - 3x + 1
    ZPoly g = {Int(-1), Int(1)};          // x - 1
    CHECK(abs(resultant(f, g)) == 1);
    // (alpha - 1)^2 - alpha = alpha^2 - 3 alpha + 1 = 0 via the minimal polynomial
    // numeric confirmation
    Ball alpha = (Ball::exact(3, 128) + Ball::exact(5, 128).sqrt()) / 2;
    Ball res = (alpha - 1).square() - alpha;
    CHECK(res.contains_zero());
    CHECK(res.width_exponent() < -100);
}

}  // TEST_SUITE
