#include "nearsq/sequences.hpp"

namespace nearsq {

RecurrenceParams RecurrenceParams::general(Int a, Int b) {
    if (a < 1) throw std::invalid_argument("a must be >= 1");
    if (b == 0) throw std::invalid_argument("b must be nonzero");
    RecurrenceParams p;
    p.a = std::move(a);
    p.b = std::move(b);
    p.delta = p.a * p.a + 4 * p.b;
    if (p.b < 0) {
        Int r = isqrt(-p.b);
        if (r * r == -p.b && gcd(p.a, r) == 1) p.b1 = r;
    }
    return p;
}

RecurrenceParams RecurrenceParams::with_square_b(Int a, Int b1) {
    if (b1 < 1) throw std::invalid_argument("b1 must be >= 1");
    if (gcd(a, b1) != 1) throw std::invalid_argument("a and b1 must be coprime");
    RecurrenceParams p = general(std::move(a), -b1 * b1);
    p.b1 = std::move(b1);
    return p;
}

RecurrenceParams RecurrenceParams::classical_a(Int a) {
    return with_square_b(std::move(a), 1);
}

bool RecurrenceParams::degenerate() const {
    if (delta == 0) return true;
    // with b = -b1^2 and delta < 0, alpha/beta lies on the unit circle; it is a
    // root of unity exactly when a/b1 in {1, 2}, i.e. (a, b1) in {(1,1), (2,1)}
    if (b1 && delta < 0 && (a == *b1 || a == 2 * *b1)) return true;
    return false;
}

namespace {

void check_n(const RecurrenceParams& params, long n) {
    if (n < 0) throw std::invalid_argument("negative index");
    if (n > params.max_index) throw std::invalid_argument("index exceeds configured cap");
}

}  // namespace

LadderState uv_ladder(const RecurrenceParams& params, long n) {
    check_n(params, n);
    const Int& a = params.a;
    const Int nb = -params.b;  // (-b)^k tracked as q
    LadderState s{0, 2, 1, a};  // index 0
    if (n == 0) return s;
    Int q = 1;  // (-b)^0
    int top = 63;
    while (top > 0 && ((n >> top) & 1) == 0) --top;
    for (int i = top; i >= 0; --i) {
        // k -> 2k, 2k+1 from (u_k, v_k), (u_{k+1}, v_{k+1}), q = (-b)^k
        Int u2 = s.u * s.v;                    // u_{2k} = u_k v_k
        Int v2 = s.v * s.v - 2 * q;            // v_{2k} = v_k^2 - 2(-b)^k
        Int u2n = s.u_next * s.v - q;          // u_{2k+1} = u_{k+1} v_k - (-b)^k
        Int v2n = s.v_next * s.v - a * q;      // v_{2k+1} = v_{k+1} v_k - a(-b)^k
        if ((n >> i) & 1) {
            Int u2nn = s.u_next * s.v_next;            // u_{2k+2}
            Int v2nn = s.v_next * s.v_next - 2 * q * nb;  // v_{2k+2}
            s.u = std::move(u2n);
            s.v = std::move(v2n);
            s.u_next = std::move(u2nn);
            s.v_next = std::move(v2nn);
            q = q * q * nb;
        } else {
            s.u = std::move(u2);
            s.v = std::move(v2);
            s.u_next = std::move(u2n);
            s.v_next = std::move(v2n);
            q = q * q;
        }
    }
    return s;
}

Int term(const RecurrenceParams& params, SequenceKind kind, long n) {
    check_n(params, n);
    switch (kind) {
        case SequenceKind::U:
            return uv_ladder(params, n).u;
        case SequenceKind::V:
            return uv_ladder(params, n).v;
        case SequenceKind::T:
        case SequenceKind::W: {
            if (!params.b1)
                throw std::invalid_argument("t/w terms require b = -b1^2");
            LadderState s = uv_ladder(params, n);
            // t_n = u_{n+1} - b1 u_n, w_n = u_{n+1} + b1 u_n
            if (kind == SequenceKind::T) return s.u_next - *params.b1 * s.u;
            return s.u_next + *params.b1 * s.u;
        }
    }
    throw std::logic_error("unreachable");
}

Int term_naive(const RecurrenceParams& params, SequenceKind kind, long n) {
    check_n(params, n);
    Int x0, x1;
    switch (kind) {
        case SequenceKind::U: x0 = 0; x1 = 1; break;
        case SequenceKind::V: x0 = 2; x1 = params.a; break;
        case SequenceKind::T:
            if (!params.b1) throw std::invalid_argument("t terms require b = -b1^2");
            x0 = 1;
            x1 = params.a - *params.b1;
            break;
        case SequenceKind::W:
            if (!params.b1) throw std::invalid_argument("w terms require b = -b1^2");
            x0 = 1;
            x1 = params.a + *params.b1;
            break;
    }
    if (n == 0) return x0;
    for (long i = 1; i < n; ++i) {
        Int x2 = params.a * x1 + params.b * x0;
        x0 = std::move(x1);
        x1 = std::move(x2);
    }
    return x1;
}

FactorPair factor_pair(const RecurrenceParams& params, long N) {
    if (N < 2) throw std::domain_error("factor_pair needs N >= 2");
    check_n(params, N);
    FactorPair fp;
    if (N % 2 == 0) {
        LadderState s = uv_ladder(params, N / 2);
        fp.left = std::move(s.u);
        fp.right = std::move(s.v);
    } else {
        if (!params.b1)
            throw std::invalid_argument("odd-index factorization requires b = -b1^2");
        LadderState s = uv_ladder(params, (N - 1) / 2);
        fp.left = s.u_next - *params.b1 * s.u;
        fp.right = s.u_next + *params.b1 * s.u;
    }
    fp.common = gcd(fp.left, fp.right);
    return fp;
}

namespace {

void require_classical(const Int& a) {
    if (a < 3) throw std::invalid_argument("gcd tables require a >= 3, b = -1");
}

}  // namespace

int predicted_gcd_uv(const Int& a, long n) {
    require_classical(a);
    bool a_even = mpz_even_p(a.get_mpz_t());
    if (a_even) return (n % 2 != 0) ? 1 : 2;
    return (n % 3 != 0) ? 1 : 2;
}

int predicted_gcd_tw(const Int& a, long n) {
    require_classical(a);
    bool a_odd = mpz_odd_p(a.get_mpz_t());
    return (a_odd && n % 3 == 1) ? 2 : 1;
}

std::array<int, 3> predicted_gcd_triple(const Int& a, long m) {
    require_classical(a);
    if (mpz_even_p(a.get_mpz_t()) || m % 2 == 0)
        throw std::invalid_argument("triple gcd table requires odd a and odd m");
    if (m % 3 != 0) return {1, 1, 2};
    long r = mpz_fdiv_ui(a.get_mpz_t(), 3);
    if (r == 0) return {1, 1, 1};
    if (r == 1) return {1, 3, 1};
    return {3, 1, 1};
}

}  // namespace nearsq
