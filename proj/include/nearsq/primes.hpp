#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nearsq/int.hpp"

namespace nearsq {

std::vector<std::uint32_t> sieve_primes(std::uint32_t bound);

enum class PrimeVerdict {
    Composite,
    Prime,          // deterministic (Miller-Rabin certificate below 2^64, or trial division)
    ProbablePrime,  // Baillie-PSW style; no counterexample known, flagged as uncertified
};

// Deterministic for n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Deterministic below 2^64; BPSW (strong base-2 + strong Lucas-Selfridge) above.
PrimeVerdict prime_test(const Int& n);

// Brent-cycle Pollard rho. Returns a nontrivial factor of composite odd n,
// or 0 once the iteration budget is exhausted. Deterministic for fixed seed.
Int pollard_brent(const Int& n, std::uint64_t budget, std::uint64_t seed = 1);

// Product tree over the primes below a bound, for batch trial division:
// one gcd with the root plus descent along dividing branches instead of
// testing every prime individually.
class SmallPrimeTree {
public:
    explicit SmallPrimeTree(std::uint32_t bound);

    std::uint32_t bound() const { return bound_; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    // all primes p <= bound with p | n, in increasing order
    std::vector<std::uint32_t> prime_divisors(const Int& n) const;

    // process-wide shared instance for a given bound
    static const SmallPrimeTree& shared(std::uint32_t bound);

private:
    void collect(std::size_t level, std::size_t idx, const Int& g,
                 std::vector<std::uint32_t>& out) const;

    std::uint32_t bound_;
    std::vector<std::uint32_t> primes_;
    std::size_t leaf_span_;
    // levels_[0] = leaf products, levels_.back() = single root product
    std::vector<std::vector<Int>> levels_;
};

}  // namespace nearsq
