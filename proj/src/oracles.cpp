#include "nearsq/oracles.hpp"

#include <stdexcept>

#include "nearsq/sequences.hpp"

namespace nearsq {

std::string QuarticForm::str() const {
    std::string s = A.get_str() + "*x^" + std::to_string(d);
    if (B >= 0)
        s += "+" + B.get_str();
    else
        s += B.get_str();
    s += "=" + C.get_str() + "*y^2";
    return s;
}

std::vector<std::pair<Int, Int>> search_quartic(const QuarticForm& form, const Int& bound) {
    if (form.d != 2 && form.d != 4) throw std::invalid_argument("degree must be 2 or 4");
    if (form.A == 0 || form.C == 0) throw std::invalid_argument("degenerate form");
    std::vector<std::pair<Int, Int>> out;
    for (Int x = 0; x <= bound; ++x) {
        Int xd = x * x;
        if (form.d == 4) xd *= xd;
        Int rhs = form.A * xd + form.B;
        if (sgn(rhs) * sgn(form.C) < 0) continue;
        Int y2;
        mpz_fdiv_qr(y2.get_mpz_t(), xd.get_mpz_t() /* reuse as remainder */, rhs.get_mpz_t(),
                    form.C.get_mpz_t());
        if (xd != 0) continue;  // C does not divide
        if (!is_square(y2)) continue;
        out.emplace_back(x, isqrt(y2));
    }
    return out;
}

Obstruction modular_obstruction(const QuarticForm& form, long modulus) {
    if (modulus < 2 || modulus > 10'000) throw std::invalid_argument("modulus out of range");
    const long m = modulus;
    std::vector<char> squares(m, 0);
    for (long y = 0; y < m; ++y) {
        Int v = (form.C * y * y) % m;
        squares[mpz_fdiv_ui(v.get_mpz_t(), m)] = 1;
    }
    for (long x = 0; x < m; ++x) {
        Int xd = Int(x) * x;
        if (form.d == 4) xd = xd * xd;
        Int lhs = form.A * xd + form.B;
        if (squares[mpz_fdiv_ui(lhs.get_mpz_t(), m)]) return Obstruction::Inconclusive;
    }
    return Obstruction::Obstructed;
}

std::vector<std::pair<Int, Int>> search_poly_square(const std::vector<Int>& coeffs,
                                                    const Int& C, long a_min, long a_max) {
    std::vector<std::pair<Int, Int>> out;
    for (long a = a_min; a <= a_max; ++a) {
        Int v = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * a + *it;
        if (sgn(v) * sgn(C) < 0) continue;
        Int y2, rem;
        mpz_fdiv_qr(y2.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), C.get_mpz_t());
        if (rem != 0) continue;
        if (!is_square(y2)) continue;
        out.emplace_back(Int(a), isqrt(y2));
    }
    return out;
}

std::vector<std::pair<long, long>> search_v_equals(const Int& value, long m_min, long m_max,
                                                   long a_min, long a_max) {
    std::vector<std::pair<long, long>> out;
    for (long a = std::max(3L, a_min); a <= a_max; ++a) {
        RecurrenceParams params = RecurrenceParams::classical_a(Int(a));
        Int v0 = 2, v1 = Int(a);
        for (long m = 1; m <= m_max; ++m) {
            if (m >= m_min && v1 == value) out.emplace_back(m, a);
            Int v2 = Int(a) * v1 - v0;
            v0 = std::move(v1);
            v1 = std::move(v2);
            if (v0 > value && m >= 2) break;  // strictly increasing past m
        }
    }
    return out;
}

std::vector<OracleCase> standard_quartic_battery() {
    auto P = [](long x, long y) { return std::pair<Int, Int>(x, y); };
    return {
        {"2x^4-y^2=1", {Int(2), 4, Int(-1), Int(1)}, Int(1000), {P(1, 1), P(13, 239)}},
        {"3x^4-1=2y^2", {Int(3), 4, Int(-1), Int(2)}, Int(1000), {P(1, 1), P(3, 11)}},
        {"4x^4-3=y^2", {Int(4), 4, Int(-3), Int(1)}, Int(1000), {P(1, 1)}},
        {"9x^4-1=2y^2", {Int(9), 4, Int(-1), Int(2)}, Int(1000), {P(1, 2)}},
    };
}

}  // namespace nearsq
