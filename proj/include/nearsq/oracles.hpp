#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nearsq/int.hpp"

namespace nearsq {

// A x^d + B = C y^2 with d in {2, 4}
struct QuarticForm {
    Int A;
    int d = 4;
    Int B;
    Int C = 1;

    std::string str() const;
};

// exhaustive nonnegative solutions with x <= bound ("complete within box",
// not a proof that no larger solutions exist)
std::vector<std::pair<Int, Int>> search_quartic(const QuarticForm& form, const Int& bound);

enum class Obstruction { Obstructed, Inconclusive };

// exhaustive residue check of the congruence A x^d + B = C y^2 (mod m)
Obstruction modular_obstruction(const QuarticForm& form, long modulus);

// f(a) = C y^2 over a in [a_min, a_max], f given by coefficients c[0] + c[1] a + ...
std::vector<std::pair<Int, Int>> search_poly_square(const std::vector<Int>& coeffs,
                                                    const Int& C, long a_min, long a_max);

// v_m(a) = value over the box (used for the small companion-value exclusions)
std::vector<std::pair<long, long>> search_v_equals(const Int& value, long m_min, long m_max,
                                                   long a_min, long a_max);

// the standard battery of small equations with their expected solution sets
struct OracleCase {
    std::string name;
    QuarticForm form;
    Int bound;
    std::vector<std::pair<Int, Int>> expected;
};
std::vector<OracleCase> standard_quartic_battery();

}  // namespace nearsq
