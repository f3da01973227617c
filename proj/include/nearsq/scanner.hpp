#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nearsq/nearsquare.hpp"
#include "nearsq/sequences.hpp"

namespace nearsq {

struct Finding {
    long n = 0;
    long a = 0;
    Int b;
    Int kernel;
    Int root;
    std::string cls;
    bool certified = true;
    bool critical = false;  // contradicts the scan's expected-empty claim

    std::string serialize() const;
    static std::optional<Finding> parse(const std::string& line);
    bool operator==(const Finding&) const = default;
};

struct UnresolvedTerm {
    long n = 0;
    long a = 0;
    Int b;

    std::string serialize() const;
    static std::optional<UnresolvedTerm> parse(const std::string& line);
    bool operator==(const UnresolvedTerm&) const = default;
};

struct ScanConfig {
    int threads = 0;               // 0: library default
    bool context_mode = false;     // lift the n > 8 / N >= 5 preconditions
    bool mp_classes = false;       // theorem scan: also report S/2S/3S/6S hits
    std::string checkpoint_path;   // empty: no checkpointing
    long row_limit = -1;           // stop after this many new rows (resume later)
    NsqConfig nsq;
};

struct ScanOutcome {
    std::vector<Finding> findings;
    std::vector<UnresolvedTerm> unresolved;
    bool complete = true;  // false when row_limit interrupted the scan
    long rows_done = 0;
    long terms_classified = 0;
};

// Near-square hunt over u_n(a, -b1^2) for coprime pairs, n > 8 (or n >= 2 in
// context mode). Degenerate pairs and trivial |u| <= 1 terms are excluded.
ScanOutcome scan_conjecture(long a_max, long b1_max, long n_max, const ScanConfig& cfg = {});

// Expected-empty hunt over u_N(c^2+1, -1) for N >= 5, prime kernels >= 5;
// any finding is flagged critical. Context mode adds the N = 4 row.
ScanOutcome scan_theorem(long c_max, long n_max, const ScanConfig& cfg = {});

struct PropViolation {
    std::string rule;
    long a = 0;
    Int b;
    long n = 0;
    std::string detail;
};

struct PropsReport {
    std::vector<PropViolation> violations;
    long checks = 0;
    bool ok() const { return violations.empty(); }
};

// index-pattern facts for squares and twice-squares in u, v over odd coprime
// (a, b) with positive discriminant, plus the fixed a = 3 exclusions and values
PropsReport verify_small_props(long n_cap, long a_cap);

// classification of u_N(a, b) through the index-splitting factorizations
NearSquareClass classify_term(const RecurrenceParams& params, long N, const NsqConfig& cfg);

}  // namespace nearsq
