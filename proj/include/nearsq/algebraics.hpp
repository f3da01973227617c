#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nearsq/ball.hpp"

namespace nearsq {

// Certified values of the quartic quantities attached to a (b = -1 setting):
// alpha, beta roots of x^2 - ax + 1; theta = sqrt(alpha+1); thetaP = sqrt(1+beta);
// phi = sqrt(1-beta); xi = sqrt(alpha-1); and, when a = c^2 + 1 with c >= 2,
// mu = theta^2 + c theta - 1 and muP = thetaP^2 + c thetaP - 1.
struct AlgebraicContext {
    long a = 0;
    std::optional<long> c;
    mpfr_prec_t prec = 192;
    Ball alpha, beta, theta, thetaP, phi, xi;
    Ball mu, muP;  // valid only when c is set

    // a >= 4 required; defining-polynomial residuals certified below 2^(-prec/2)
    static AlgebraicContext build(long a, mpfr_prec_t prec = 192);
};

struct CheckOutcome {
    std::string name;
    char family = 'a';  // 'a': indexed by a, 'c': indexed by c, 'x': pointwise
    long param = 0;
    Truth verdict = Truth::Unknown;
    mpfr_prec_t bits = 0;
};

struct EstimateReport {
    long params_checked = 0;
    long checks_run = 0;
    std::vector<CheckOutcome> failures;   // certified false
    std::vector<CheckOutcome> undecided;  // still unknown at the precision cap
    std::string ell1_note;                // measured tail behaviour diagnostic
    bool ok() const { return failures.empty() && undecided.empty(); }
};

struct EstimateOptions {
    long a_min = 4, a_max = 10'000;
    long c_min = 2, c_max = 1'000;
    int random_samples = 1000;
    long a_sample_max = 1'000'000'000;
    long c_sample_max = 1'000'000;
    std::uint64_t seed = 0x5eedcafe;
    mpfr_prec_t prec0 = 192;
    mpfr_prec_t prec_cap = 1024;
    int threads = 0;
};

// every inequality of the a-range and c-range estimate families, outward
// rounded; escalates precision per parameter until decided or capped
EstimateReport verify_estimates(const EstimateOptions& opt = {});

// the elementary sqrt/log/complex-Log bounds on sampled grids
EstimateReport analytic_bounds_selfcheck(mpfr_prec_t prec = 192,
                                         mpfr_prec_t prec_cap = 1024);

// single-parameter check lists (exposed for tests / CLI detail mode)
std::vector<CheckOutcome> check_a_estimates(long a, mpfr_prec_t prec);
std::vector<CheckOutcome> check_c_estimates(long c, mpfr_prec_t prec);

}  // namespace nearsq
