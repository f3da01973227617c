#pragma once

#include <string>
#include <vector>

#include "nearsq/algebraics.hpp"
#include "nearsq/int.hpp"

namespace nearsq {

// integer polynomials as coefficient vectors, c[0] + c[1] x + ...
using ZPoly = std::vector<Int>;

// resultant by the subresultant pseudo-remainder sequence (exact integers)
Int resultant(ZPoly f, ZPoly g);
// independent route: Bareiss fraction-free elimination on the Sylvester matrix
Int resultant_sylvester(const ZPoly& f, const ZPoly& g);

enum class Generator { Theta, Phi, Xi };

// x + y r + z r^2 + w r^3 in the order Z[r] for the quartic generator r
struct OrderElement {
    Generator gen = Generator::Theta;
    long a = 0;
    Int x, y, z, w;
};

// monic quartic minimal polynomial of the generator, c[0..4]
ZPoly minimal_poly(Generator gen, long a);

// product of the four conjugate values, exactly, as Res(minpoly, element);
// the minimal polynomial is monic so no sign normalization is needed
Int absolute_norm(const OrderElement& e);

OrderElement multiply(const OrderElement& lhs, const OrderElement& rhs);

struct GeneratorNorm {
    std::string name;
    Int norm;
    bool unit;  // |norm| == 1
};

struct IndependenceCheck {
    int rank = 0;               // expected log-embedding rank (3 or 2)
    std::string det;            // determinant enclosure, printed
    double det_magnitude = 0;   // |midpoint|
    double det_radius = 0;
    bool separated = false;     // |det| > 10 * radius and sign certified
    mpfr_prec_t bits = 0;
};

struct UnitGroupReport {
    char family = 't';  // 't': Z[theta] (a=c^2+1), 'p': Z[phi] (a>=4), 'x': Z[xi] (a=c^2+1)
    long param = 0;     // c for 't'/'x', a for 'p'
    std::vector<GeneratorNorm> generators;
    IndependenceCheck independence;
    bool ok() const;
};

UnitGroupReport check_theta_units(long c, mpfr_prec_t prec = 256);
UnitGroupReport check_phi_units(long a, mpfr_prec_t prec = 256);
UnitGroupReport check_xi_units(long c, mpfr_prec_t prec = 256);

struct UnitSweepReport {
    std::vector<UnitGroupReport> reports;
    bool ok() const;
};
// norms and independence for all three families over the given ranges
UnitSweepReport verify_unit_groups(long c_min, long c_max, long a_min, long a_max,
                                   mpfr_prec_t prec = 256, int threads = 0);

struct ConjugationIdentity {
    std::string name;
    bool holds = false;      // residual enclosure contains zero
    long width_exp = 0;      // enclosure width exponent
};

struct ConjugationReport {
    long c = 0;
    std::vector<ConjugationIdentity> identities;
    mpfr_prec_t bits = 0;
    bool ok() const;
};

// numeric confirmation of the conjugation-action identities for a = c^2+1
ConjugationReport verify_conjugation_table(long c, mpfr_prec_t prec = 192,
                                           mpfr_prec_t prec_cap = 2048);

}  // namespace nearsq
