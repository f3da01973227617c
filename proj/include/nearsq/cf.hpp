#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nearsq/algebraics.hpp"
#include "nearsq/ball.hpp"

namespace nearsq {

enum class CaseKind { IIIa1, IIIa2, IIIb, IIIc };

std::string case_name(CaseKind kind);
std::optional<CaseKind> case_from_name(const std::string& s);

struct ConvergentRun {
    std::vector<std::pair<Int, Int>> kept;  // all (p_i, q_i) with q_i < limit
    std::optional<std::pair<Int, Int>> next;  // first convergent at or past the limit
    bool certified = false;  // expansions at P and 2P agreed
    bool terminated = false;  // value was rational and the expansion ended
    mpfr_prec_t bits = 0;
};

// convergents of a certified real, recomputed at doubled precision and
// required to agree before anything is returned
ConvergentRun certified_convergents(const std::function<Ball(mpfr_prec_t)>& value,
                                    const Int& q_limit, mpfr_prec_t prec0,
                                    mpfr_prec_t prec_cap);

struct CaseBounds {
    Ball b1, b2;           // B1(c), B2(c)
    bool floors_hold;      // B1 > 1.5 c^3 and B2 > c, certified
    mpfr_prec_t bits = 0;
};
CaseBounds reduction_bounds(long c, mpfr_prec_t prec = 256);

enum class SecondaryOutcome { Reject, Accept, Undecided };

struct FiredEntry {
    Int num, den;            // convergent p/q (or direct pair v/u)
    bool direct = false;     // from the small-exponent direct enumeration
    double lambda_mid = 0;   // |Lambda| midpoint
    std::string lambda;      // printed enclosure
    long m_max = 0;          // largest exponent index consistent with the bound
    SecondaryOutcome outcome = SecondaryOutcome::Reject;
    std::string witness;     // term that was found square, when Accept
};

struct ReductionReport {
    CaseKind kind = CaseKind::IIIa1;
    long parameter = 0;
    Int q_limit = 0;
    long convergents = 0;
    std::vector<FiredEntry> fired;
    long undecided = 0;       // enclosure never separated at the precision cap
    mpfr_prec_t bits = 0;
    double seconds = 0;

    bool violation() const;   // some firing survived the secondary check
    bool notable() const;     // violation, undecided, or a fired entry with m_max >= 1
};

struct CfOptions {
    mpfr_prec_t prec_cap = 1 << 15;
    long m_cap = 1'000'000;
};

// the per-parameter denominator cap for each verification problem
Int case_q_limit(CaseKind kind, long parameter);
// parameter bounds of the full paper-scale sweeps
long case_full_range(CaseKind kind);
long case_desk_range(CaseKind kind);
long case_param_min(CaseKind kind);

ReductionReport verify_case_parameter(CaseKind kind, long parameter,
                                      const CfOptions& opt = {});

// exposed for tests: the m-range scan plus exact square test on the terms
SecondaryOutcome secondary_square_scan(CaseKind kind, long parameter,
                                       const Ball& lambda_abs, long& m_max,
                                       std::string& witness, long m_cap = 1'000'000);

// test seam: same scan with the term source replaced (planted-square wiring)
SecondaryOutcome secondary_square_scan_with(CaseKind kind, long parameter,
                                            const Ball& lambda_abs, long& m_max,
                                            std::string& witness, long m_cap,
                                            const std::function<Int(long)>& term_at);

// one line of structured report output for a parameter's verification
std::string reduction_report_json(const ReductionReport& rep);

struct SweepOptions {
    int threads = 0;
    std::string checkpoint_path;  // resumable long runs
    long row_limit = -1;          // stop after this many parameters (tests)
    CfOptions cf;
};

struct SweepResult {
    long params_done = 0;
    long long convergents = 0;
    long long fired = 0;
    long long violations = 0;
    long long undecided = 0;
    std::vector<std::string> notable_lines;  // reports worth keeping verbatim
    bool complete = true;
    // the full per-parameter reports of the current session (desk-scale runs)
    std::vector<ReductionReport> session_reports;
};

SweepResult sweep_case(CaseKind kind, long lo, long hi, const SweepOptions& opt = {},
                       bool keep_session_reports = false);

}  // namespace nearsq
