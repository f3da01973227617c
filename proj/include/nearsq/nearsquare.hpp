#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nearsq/int.hpp"

namespace nearsq {

struct NsqConfig {
    std::uint32_t trial_bound = 1'000'000;
    std::uint64_t rho_budget = 2'000'000;
};

// n written as kernel * root^2 * (product of unresolved cofactors).
// kernel is signed squarefree, kept as its set of prime factors plus the sign.
// Unresolved cofactors are composite, not perfect squares, pairwise coprime,
// and coprime to every known kernel prime; they appear only when the factoring
// budget ran out.
struct SquareDecomposition {
    enum class State { Exact, Zero, Unresolved };

    State state = State::Exact;
    int sign = 1;
    std::vector<Int> kernel_primes;  // sorted, distinct
    Int root = 1;
    std::vector<Int> unresolved;
    bool certified = true;  // every kernel prime has a deterministic certificate

    Int kernel() const;       // sign * product of kernel_primes (known part)
    Int reconstruct() const;  // kernel * root^2 * product(unresolved)
};

SquareDecomposition square_decompose(const Int& n, const NsqConfig& cfg = {});

// decomposition of a product from decompositions of the factors
SquareDecomposition combine(const SquareDecomposition& lhs, const SquareDecomposition& rhs,
                            const NsqConfig& cfg = {});

enum class NsqKind { Zero, Square, CTimesSquare, PrimeTimesSquare, Other, Unresolved };

struct NearSquareClass {
    NsqKind kind = NsqKind::Other;
    Int kernel = 0;        // signed; for Unresolved: the known part only
    bool certified = true;
    bool kernel_partial = false;  // kind decided despite unresolved cofactors

    // Square, or PrimeTimesSquare with kernel > 0
    bool is_near_square() const {
        return kind == NsqKind::Square || (kind == NsqKind::PrimeTimesSquare && kernel > 0);
    }
    // positive kernel equal to 1 or to any prime (the conjecture's c classes;
    // also admits the kernels 2 and 3 that classify() buckets as CTimesSquare)
    bool is_conjecture_hit() const;

    std::string label() const;  // "S", "2S", "pS(181)", "other", ...
};

NearSquareClass classify(const SquareDecomposition& d);
NearSquareClass classify(const Int& n, const NsqConfig& cfg = {});

}  // namespace nearsq
