#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

#include "nearsq/int.hpp"

namespace nearsq {

// The pair (a, b) behind u, v (and t, w when b = -b1^2), with the derived
// discriminant. Sequences are defined for any a >= 1, b != 0; operations tied
// to the b = -1 setting check classical() and reject otherwise.
struct RecurrenceParams {
    Int a;
    Int b;
    std::optional<Int> b1;  // set iff b = -b1^2 with gcd(a, b1) = 1
    Int delta;              // a^2 + 4b
    long max_index = 1'000'000;

    static RecurrenceParams general(Int a, Int b);
    // b = -b1^2; requires b1 >= 0 and gcd(a, b1) = 1
    static RecurrenceParams with_square_b(Int a, Int b1);
    // the b = -1 case; t, w always available (b1 = 1)
    static RecurrenceParams classical_a(Int a);

    bool classical() const { return a >= 3 && b == -1; }
    // alpha/beta a root of unity, or delta = 0: the sequence is periodic or
    // linear and every structural argument below degenerates
    bool degenerate() const;
};

enum class SequenceKind { U, V, T, W };

// exact n-th term, O(log n) big-integer multiplications
Int term(const RecurrenceParams& params, SequenceKind kind, long n);

// plain linear recurrence; kept as the independent oracle for term()
Int term_naive(const RecurrenceParams& params, SequenceKind kind, long n);

// (u_n, v_n) and (u_{n+1}, v_{n+1}) by the doubling ladder
struct LadderState {
    Int u, v, u_next, v_next;
};
LadderState uv_ladder(const RecurrenceParams& params, long n);

struct FactorPair {
    Int left, right, common;  // left * right = u_N, common = gcd(left, right)
};
// N = 2n -> (u_n, v_n); N = 2n+1 -> (t_n, w_n), which needs b1
FactorPair factor_pair(const RecurrenceParams& params, long N);

// table-predicted gcds, b = -1 only
int predicted_gcd_uv(const Int& a, long n);
int predicted_gcd_tw(const Int& a, long n);
// (gcd(u_m, v_m+1), gcd(u_m, v_m-1), gcd(v_m+1, v_m-1)) for odd a, odd m
std::array<int, 3> predicted_gcd_triple(const Int& a, long m);

}  // namespace nearsq
