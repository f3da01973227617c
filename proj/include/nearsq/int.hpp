#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace nearsq {

using Int = mpz_class;

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int pow_ui(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// number of bits in |n|; bit_length(0) == 0
inline std::size_t bit_length(const Int& n) {
    if (sgn(n) == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline bool fits_u64(const Int& n) {
    return sgn(n) >= 0 && bit_length(n) <= 64;
}

inline std::uint64_t to_u64(const Int& n) {
    // mpz_get_ui truncates to unsigned long (64-bit here)
    return mpz_get_ui(n.get_mpz_t());
}

}  // namespace nearsq
