#include "nearsq/nearsquare.hpp"

#include <algorithm>
#include <map>

#include "nearsq/primes.hpp"

namespace nearsq {

Int SquareDecomposition::kernel() const {
    Int k = sign;
    for (const Int& p : kernel_primes) k *= p;
    return k;
}

Int SquareDecomposition::reconstruct() const {
    if (state == State::Zero) return 0;
    Int n = kernel() * root * root;
    for (const Int& u : unresolved) n *= u;
    return n;
}

namespace {

struct Accumulator {
    std::map<Int, unsigned long> exponents;  // discovered prime -> exponent
    std::map<Int, bool> cert;                // prime -> certified
    std::vector<Int> unresolved;
    Int root = 1;

    void add_prime(const Int& p, unsigned long e, bool certified) {
        exponents[p] += e;
        auto it = cert.find(p);
        if (it == cert.end())
            cert[p] = certified;
        else
            it->second = it->second && certified;
    }
};

// factor m (coprime parts pushed via stack), crediting the accumulator
void factor_into(Accumulator& acc, Int m, const NsqConfig& cfg, std::uint64_t& budget) {
    const SmallPrimeTree& tree = SmallPrimeTree::shared(cfg.trial_bound);
    std::vector<std::pair<Int, unsigned long>> stack;  // (value, multiplicity)
    stack.emplace_back(std::move(m), 1);
    while (!stack.empty()) {
        auto [x, mult] = std::move(stack.back());
        stack.pop_back();
        if (x == 1) continue;
        for (std::uint32_t p : tree.prime_divisors(x)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
                mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
                ++e;
            }
            acc.add_prime(Int(p), e * mult, true);
        }
        if (x == 1) continue;
        if (is_square(x)) {
            stack.emplace_back(isqrt(x), 2 * mult);
            continue;
        }
        PrimeVerdict v = prime_test(x);
        if (v != PrimeVerdict::Composite) {
            acc.add_prime(x, mult, v == PrimeVerdict::Prime);
            continue;
        }
        if (mpz_perfect_power_p(x.get_mpz_t())) {
            // smallest base: try exponents from the largest down
            unsigned long maxk = bit_length(x);
            bool split = false;
            for (unsigned long k = 3; k <= maxk; k += 2) {
                Int r;
                if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k)) {
                    stack.emplace_back(std::move(r), k * mult);
                    split = true;
                    break;
                }
            }
            if (split) continue;
        }
        Int d = (budget > 0) ? pollard_brent(x, budget, 0x5EED + acc.exponents.size()) : Int(0);
        if (d == 0) {
            // out of budget: composite, non-square piece stays unresolved
            if (mult % 2 == 0) {
                acc.root *= pow_ui(x, mult / 2);
            } else {
                acc.root *= pow_ui(x, mult / 2);
                acc.unresolved.push_back(std::move(x));
            }
            continue;
        }
        budget = (budget > cfg.rho_budget / 8) ? budget - cfg.rho_budget / 8 : 0;
        Int q = x / d;
        stack.emplace_back(std::move(d), mult);
        stack.emplace_back(std::move(q), mult);
    }
}

SquareDecomposition finish(Accumulator&& acc, int sign) {
    SquareDecomposition d;
    d.sign = sign;
    d.root = std::move(acc.root);
    for (auto& [p, e] : acc.exponents) {
        if (e % 2 == 1) {
            d.kernel_primes.push_back(p);
            d.certified = d.certified && acc.cert[p];
        }
        if (e >= 2) d.root *= pow_ui(p, e / 2);
    }
    // merge unresolved pieces that share factors (rare; rho splits re-run)
    for (Int& u : acc.unresolved) {
        bool merged = false;
        for (Int& v : d.unresolved) {
            Int g = gcd(u, v);
            if (g > 1) {
                v *= u;  // conservative: lump them together
                merged = true;
                break;
            }
        }
        if (!merged) d.unresolved.push_back(std::move(u));
    }
    // a lumped product may have become a square
    for (auto it = d.unresolved.begin(); it != d.unresolved.end();) {
        if (is_square(*it)) {
            d.root *= isqrt(*it);
            it = d.unresolved.erase(it);
        } else {
            ++it;
        }
    }
    d.state = d.unresolved.empty() ? SquareDecomposition::State::Exact
                                   : SquareDecomposition::State::Unresolved;
    if (!d.unresolved.empty()) d.certified = false;
    return d;
}

}  // namespace

SquareDecomposition square_decompose(const Int& n, const NsqConfig& cfg) {
    SquareDecomposition d;
    if (n == 0) {
        d.state = SquareDecomposition::State::Zero;
        d.root = 0;
        return d;
    }
    Accumulator acc;
    std::uint64_t budget = cfg.rho_budget;
    factor_into(acc, abs(n), cfg, budget);
    return finish(std::move(acc), sgn(n));
}

SquareDecomposition combine(const SquareDecomposition& lhs, const SquareDecomposition& rhs,
                            const NsqConfig& cfg) {
    if (lhs.state == SquareDecomposition::State::Zero ||
        rhs.state == SquareDecomposition::State::Zero) {
        SquareDecomposition d;
        d.state = SquareDecomposition::State::Zero;
        d.root = 0;
        return d;
    }
    Accumulator acc;
    acc.root = lhs.root * rhs.root;
    for (const auto& side : {&lhs, &rhs}) {
        for (const Int& p : side->kernel_primes) acc.add_prime(p, 1, side->certified);
    }
    std::uint64_t budget = cfg.rho_budget / 4;
    for (const auto& side : {&lhs, &rhs})
        for (const Int& u : side->unresolved) factor_into(acc, u, cfg, budget);
    return finish(std::move(acc), lhs.sign * rhs.sign);
}

NearSquareClass classify(const SquareDecomposition& d) {
    NearSquareClass c;
    if (d.state == SquareDecomposition::State::Zero) {
        c.kind = NsqKind::Zero;
        return c;
    }
    c.kernel = d.kernel();
    c.certified = d.certified;
    const std::size_t nk = d.kernel_primes.size();
    if (d.state == SquareDecomposition::State::Unresolved) {
        // every unresolved cofactor is a non-square, so contributes a kernel
        // factor > 1 coprime to everything else; that often settles the kind
        const std::size_t nu = d.unresolved.size();
        if (nk >= 2 || (nk == 1 && nu >= 1) || nu >= 2) {
            c.kind = NsqKind::Other;  // kernel provably composite
            c.kernel_partial = true;
            return c;
        }
        c.kind = NsqKind::Unresolved;
        c.kernel_partial = true;
        return c;
    }
    Int k = abs(c.kernel);
    if (k == 1)
        c.kind = (c.kernel > 0) ? NsqKind::Square : NsqKind::CTimesSquare;
    else if (k == 2 || k == 3 || k == 6)
        c.kind = NsqKind::CTimesSquare;
    else if (nk == 1)
        c.kind = NsqKind::PrimeTimesSquare;
    else
        c.kind = NsqKind::Other;
    return c;
}

NearSquareClass classify(const Int& n, const NsqConfig& cfg) {
    return classify(square_decompose(n, cfg));
}

bool NearSquareClass::is_conjecture_hit() const {
    if (kernel <= 0) return false;
    if (kind == NsqKind::Square || kind == NsqKind::PrimeTimesSquare) return true;
    return kind == NsqKind::CTimesSquare && (kernel == 2 || kernel == 3);
}

std::string NearSquareClass::label() const {
    switch (kind) {
        case NsqKind::Zero: return "zero";
        case NsqKind::Square: return "S";
        case NsqKind::CTimesSquare: return kernel.get_str() + "S";
        case NsqKind::PrimeTimesSquare: return "pS(" + kernel.get_str() + ")";
        case NsqKind::Other: return kernel_partial ? "other(partial)" : "other";
        case NsqKind::Unresolved: return "unresolved";
    }
    return "?";
}

}  // namespace nearsq
