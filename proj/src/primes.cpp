#include "nearsq/primes.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace nearsq {

std::vector<std::uint32_t> sieve_primes(std::uint32_t bound) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= bound; j += i) comp[j] = true;
    }
    return primes;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool mr_witness_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    a %= n;
    if (a == 0) return false;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // composite witness
}

// strong probable prime test, mpz
bool mpz_strong_prp(const Int& n, const Int& base) {
    Int nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

// strong Lucas probable prime test, Selfridge parameter choice (method A)
bool mpz_strong_lucas_prp(const Int& n) {
    // find D in 5, -7, 9, -11, ... with jacobi(D, n) == -1
    Int D = 5;
    while (true) {
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(D) != n) return false;  // proper factor
        if (D > 0)
            D = -(D + 2);
        else
            D = -(D - 2);
        if (abs(D) > 1000000) return false;  // n must be a square; caller screens those
    }
    // P = 1, Q = (1 - D)/4
    Int Q = (1 - D) / 4;

    Int dd = n + 1;
    unsigned long s = mpz_scan1(dd.get_mpz_t(), 0);
    dd >>= s;

    // compute U_dd, V_dd, Q^dd mod n by binary expansion (most significant bit first)
    Int U = 1, V = 1, qk = Q % n;  // U_1, V_1 (P = 1)
    long bits = static_cast<long>(mpz_sizeinbase(dd.get_mpz_t(), 2));
    Int inv2 = 0;
    {
        Int two = 2;
        if (mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), n.get_mpz_t()) == 0)
            return n == 2;  // even n
    }
    for (long i = bits - 2; i >= 0; --i) {
        // double: U_{2k} = U V; V_{2k} = V^2 - 2 Q^k
        Int U2 = (U * V) % n;
        Int V2 = (V * V - 2 * qk) % n;
        qk = (qk * qk) % n;
        U = U2;
        V = V2;
        if (mpz_tstbit(dd.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // advance by one: U_{k+1} = (P U + V)/2, V_{k+1} = (D U + P V)/2
            Int Un = ((U + V) * inv2) % n;
            Int Vn = ((D * U + V) * inv2) % n;
            qk = (qk * Q) % n;
            U = Un;
            V = Vn;
        }
    }
    U %= n;
    if (U < 0) U += n;
    V %= n;
    if (V < 0) V += n;
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * qk) % n;
        if (V < 0) V += n;
        qk = (qk * qk) % n;
        if (V == 0) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // these seven bases decide primality for every n < 2^64
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (mr_witness_u64(n, a, d, s)) return false;
    }
    return true;
}

PrimeVerdict prime_test(const Int& n) {
    if (n < 2) return PrimeVerdict::Composite;
    if (fits_u64(n))
        return is_prime_u64(to_u64(n)) ? PrimeVerdict::Prime : PrimeVerdict::Composite;
    if (mpz_even_p(n.get_mpz_t())) return PrimeVerdict::Composite;
    if (is_square(n)) return PrimeVerdict::Composite;
    if (!mpz_strong_prp(n, Int(2))) return PrimeVerdict::Composite;
    if (!mpz_strong_lucas_prp(n)) return PrimeVerdict::Composite;
    return PrimeVerdict::ProbablePrime;
}

Int pollard_brent(const Int& n, std::uint64_t budget, std::uint64_t seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    // deterministic parameter schedule derived from the seed
    std::uint64_t state = seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
    auto next_u64 = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    const unsigned long block = 128;
    while (budget > 0) {
        Int c = Int(static_cast<unsigned long>(next_u64() % 0xFFFFFFFFull)) + 1;
        Int y = Int(static_cast<unsigned long>(next_u64() % 0xFFFFFFFFull)) + 2;
        Int x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            if (budget < r) budget = 0; else budget -= r;
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                std::uint64_t steps = std::min<std::uint64_t>(block, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = (q * (x - y)) % n;
                }
                if (budget < steps) budget = 0; else budget -= steps;
                g = gcd(q, n);
                k += steps;
            }
            r <<= 1;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(x - ys, n);
            }
        }
        if (g != 1 && g != n) return abs(g);
        // retry with fresh parameters on failure
    }
    return 0;
}

SmallPrimeTree::SmallPrimeTree(std::uint32_t bound)
    : bound_(bound), primes_(sieve_primes(bound)), leaf_span_(128) {
    if (primes_.empty()) throw std::invalid_argument("prime bound too small");
    std::vector<Int> level;
    for (std::size_t i = 0; i < primes_.size(); i += leaf_span_) {
        Int prod = 1;
        for (std::size_t j = i; j < std::min(i + leaf_span_, primes_.size()); ++j)
            prod *= primes_[j];
        level.push_back(prod);
    }
    levels_.push_back(std::move(level));
    while (levels_.back().size() > 1) {
        const auto& prev = levels_.back();
        std::vector<Int> up;
        for (std::size_t i = 0; i < prev.size(); i += 2) {
            if (i + 1 < prev.size())
                up.push_back(prev[i] * prev[i + 1]);
            else
                up.push_back(prev[i]);
        }
        levels_.push_back(std::move(up));
    }
}

void SmallPrimeTree::collect(std::size_t level, std::size_t idx, const Int& g,
                             std::vector<std::uint32_t>& out) const {
    if (g == 1) return;
    if (level == 0) {
        std::size_t lo = idx * leaf_span_;
        std::size_t hi = std::min(lo + leaf_span_, primes_.size());
        for (std::size_t j = lo; j < hi; ++j)
            if (mpz_divisible_ui_p(g.get_mpz_t(), primes_[j])) out.push_back(primes_[j]);
        return;
    }
    std::size_t left = idx * 2, right = idx * 2 + 1;
    const auto& below = levels_[level - 1];
    collect(level - 1, left, gcd(g, below[left]), out);
    if (right < below.size()) collect(level - 1, right, gcd(g, below[right]), out);
}

std::vector<std::uint32_t> SmallPrimeTree::prime_divisors(const Int& n) const {
    std::vector<std::uint32_t> out;
    Int g = gcd(abs(n), levels_.back()[0]);
    collect(levels_.size() - 1, 0, g, out);
    return out;
}

const SmallPrimeTree& SmallPrimeTree::shared(std::uint32_t bound) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<SmallPrimeTree>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bound);
    if (it == cache.end())
        it = cache.emplace(bound, std::make_unique<SmallPrimeTree>(bound)).first;
    return *it->second;
}

}  // namespace nearsq
