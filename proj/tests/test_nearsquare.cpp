#include <doctest.h>

#include <random>

#include "nearsq/nearsquare.hpp"
#include "nearsq/primes.hpp"

using namespace nearsq;

namespace {

// independent test-side oracle: full trial factorization (test values are
// kept small enough for this to terminate quickly)
Int slow_kernel(Int n) {
    if (n == 0) return 0;
    Int k = sgn(n);
    n = abs(n);
    for (Int p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2 == 1) k *= p;
    }
    return k * n;  // leftover is prime (or 1)
}

}  // namespace

TEST_SUITE("nearsquare") {

TEST_CASE("fixed decompositions") {
    SquareDecomposition d = square_decompose(Int(8));
    CHECK(d.kernel() == 2);
    CHECK(d.root == 2);

    d = square_decompose(Int(1967351));
    CHECK(d.kernel() == 3719);
    CHECK(d.root == 23);
    CHECK(d.certified);

    d = square_decompose(Int(-9));
    CHECK(d.kernel() == -1);
    CHECK(d.root == 3);

    d = square_decompose(Int(46368));
    CHECK(d.kernel() == 322);  // 2 * 7 * 23
    CHECK(d.root == 12);
    CHECK(slow_kernel(Int(46368)) == 322);

    d = square_decompose(Int(0));
    CHECK(d.state == SquareDecomposition::State::Zero);
    CHECK(classify(d).kind == NsqKind::Zero);
}

TEST_CASE("classification") {
    CHECK(classify(Int(38613796)).kind == NsqKind::Square);  // 6214^2
    CHECK(square_decompose(Int(38613796)).root == 6214);
    NearSquareClass c8 = classify(Int(8));
    CHECK(c8.kind == NsqKind::CTimesSquare);
    CHECK(c8.kernel == 2);
    NearSquareClass c181 = classify(Int(181));
    CHECK(c181.kind == NsqKind::PrimeTimesSquare);
    CHECK(c181.kernel == 181);
    CHECK(c181.is_near_square());
    CHECK(c181.certified);

    CHECK(classify(Int(-4)).kind == NsqKind::CTimesSquare);  // kernel -1
    CHECK(classify(Int(-4)).kernel == -1);
    CHECK(!classify(Int(-4)).is_near_square());
    CHECK(classify(Int(15)).kind == NsqKind::Other);

    // conjecture-hit predicate admits prime kernels 2 and 3
    CHECK(classify(Int(8)).is_conjecture_hit());
    CHECK(classify(Int(12)).is_conjecture_hit());
    CHECK(!classify(Int(24)).is_conjecture_hit());  // kernel 6
    CHECK(!classify(Int(-9)).is_conjecture_hit());
}

TEST_CASE("kernel reconstruction and squarefreeness") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Int n = Int(static_cast<unsigned long>(rng() % 1'000'000'000'000ull)) + 2;
        if (trial % 3 == 0) n = -n;
        SquareDecomposition d = square_decompose(n);
        REQUIRE(d.state == SquareDecomposition::State::Exact);
        CHECK(d.reconstruct() == n);
        CHECK(d.kernel() == slow_kernel(n));
        // kernel squarefree: no prime square divides it
        Int k = abs(d.kernel());
        for (Int p = 2; p * p * p * p <= k && p < 2000; ++p)
            CHECK(!(k % (p * p) == 0));
    }
}

TEST_CASE("kernel invariance under square multiplication and negation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Int m = Int(static_cast<unsigned long>(rng() % 100000)) + 2;
        Int k = Int(static_cast<unsigned long>(rng() % 1000)) + 1;
        NearSquareClass base = classify(m);
        NearSquareClass scaled = classify(m * k * k);
        CHECK(base.kind == scaled.kind);
        CHECK(base.kernel == scaled.kernel);
        CHECK(classify(-m).kernel == -base.kernel);
    }
}

TEST_CASE("budget exhaustion is honest") {
    // two primes far beyond the trial bound and any tiny rho budget
    Int p = pow_ui(Int(2), 127) - 1;
    Int q = pow_ui(Int(2), 107) - 1;
    NsqConfig tight;
    tight.trial_bound = 10'000;
    tight.rho_budget = 64;

    SquareDecomposition d = square_decompose(p * q, tight);
    CHECK(d.state == SquareDecomposition::State::Unresolved);
    CHECK(classify(d).kind == NsqKind::Unresolved);
    CHECK(!classify(d).certified);

    // a known small prime factor settles the class even when the rest is murky
    d = square_decompose(p * q * 5, tight);
    NearSquareClass c = classify(d);
    CHECK(c.kind == NsqKind::Other);
    CHECK(c.kernel_partial);

    // a perfect square cofactor resolves without factoring
    d = square_decompose(p * p * 7, tight);
    CHECK(d.state == SquareDecomposition::State::Exact);
    CHECK(d.kernel() == 7);
    CHECK(d.root == p);

    // two coprime hard cofactors force a composite kernel
    Int r = pow_ui(Int(2), 89) - 1;
    d = square_decompose(p * q * (r * r * r), tight);
    CHECK(classify(d).kind == NsqKind::Other);
}

TEST_CASE("combine multiplies decompositions") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        Int x = Int(static_cast<unsigned long>(rng() % 1000000)) + 2;
        Int y = Int(static_cast<unsigned long>(rng() % 1000000)) + 2;
        if (trial % 2) x = -x;
        SquareDecomposition d = combine(square_decompose(x), square_decompose(y));
        CHECK(d.reconstruct() == x * y);
        CHECK(d.kernel() == slow_kernel(x * y));
    }
}

}  // TEST_SUITE
