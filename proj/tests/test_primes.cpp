#include <doctest.h>

#include "nearsq/primes.hpp"

using namespace nearsq;

TEST_SUITE("primes") {

TEST_CASE("u64 deterministic test") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(561));         // Carmichael
    CHECK(!is_prime_u64(3215031751));  // strong pseudoprime to small bases
    CHECK(is_prime_u64(181));
    CHECK(is_prime_u64(3719));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest prime below 2^64
    CHECK(!is_prime_u64(18446744073709551555ull));
    std::uint64_t big_sq = 4294967291ull;  // prime
    CHECK(!is_prime_u64(big_sq * big_sq));
}

TEST_CASE("mpz verdicts") {
    CHECK(prime_test(Int(181)) == PrimeVerdict::Prime);
    CHECK(prime_test(Int(1)) == PrimeVerdict::Composite);
    CHECK(prime_test(Int(-7)) == PrimeVerdict::Composite);
    // 2^127 - 1 is prime but beyond the deterministic range
    Int m127 = pow_ui(Int(2), 127) - 1;
    CHECK(prime_test(m127) == PrimeVerdict::ProbablePrime);
    CHECK(prime_test(m127 * 3) == PrimeVerdict::Composite);
    CHECK(prime_test(m127 * m127) == PrimeVerdict::Composite);
    // product of two large primes
    Int p = m127;
    Int q = pow_ui(Int(2), 89) - 1;
    CHECK(prime_test(p * q) == PrimeVerdict::Composite);
}

TEST_CASE("pollard rho splits moderate composites") {
    Int n = Int(1000000007) * Int(1000000009);
    Int d = pollard_brent(n, 10'000'000, 1);
    REQUIRE(d != 0);
    CHECK(n % d == 0);
    CHECK(d != 1);
    CHECK(d != n);

    CHECK(pollard_brent(Int(8051), 100000, 1) != 0);

    // budget exhaustion returns 0 instead of looping
    Int p = pow_ui(Int(2), 127) - 1;
    Int q = pow_ui(Int(2), 107) - 1;
    CHECK(pollard_brent(p * q, 1000, 1) == 0);
}

TEST_CASE("small prime tree finds divisors") {
    const SmallPrimeTree& tree = SmallPrimeTree::shared(10'000);
    auto divs = tree.prime_divisors(Int(46368));
    CHECK(divs == std::vector<std::uint32_t>{2, 3, 7, 23});
    CHECK(tree.prime_divisors(Int(1)).empty());
    CHECK(tree.prime_divisors(Int(9973)) == std::vector<std::uint32_t>{9973});
    // only divisors below the bound are reported
    Int n = Int(10007) * Int(3);
    CHECK(tree.prime_divisors(n) == std::vector<std::uint32_t>{3});
}

}  // TEST_SUITE
