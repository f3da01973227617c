#include "nearsq/cf.hpp"

#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <climits>
#include <cmath>
#include <stdexcept>

#include "nearsq/checkpoint.hpp"
#include "nearsq/sequences.hpp"

namespace nearsq {

std::string case_name(CaseKind kind) {
    switch (kind) {
        case CaseKind::IIIa1: return "iiia1";
        case CaseKind::IIIa2: return "iiia2";
        case CaseKind::IIIb: return "iiib";
        case CaseKind::IIIc: return "iiic";
    }
    return "?";
}

std::optional<CaseKind> case_from_name(const std::string& s) {
    if (s == "iiia1") return CaseKind::IIIa1;
    if (s == "iiia2") return CaseKind::IIIa2;
    if (s == "iiib") return CaseKind::IIIb;
    if (s == "iiic") return CaseKind::IIIc;
    return std::nullopt;
}

Int case_q_limit(CaseKind kind, long parameter) {
    switch (kind) {
        case CaseKind::IIIa1: return Int(2'332'000);
        case CaseKind::IIIa2: return Int(28'500'000);
        case CaseKind::IIIb: return parameter >= 750 ? Int(25'000) : Int(280'000);
        case CaseKind::IIIc: return parameter >= 6 ? Int(25'000) : Int(200'000);
    }
    return Int(0);
}

long case_full_range(CaseKind kind) {
    switch (kind) {
        case CaseKind::IIIa1: return 77;
        case CaseKind::IIIa2: return 1'030'000;
        case CaseKind::IIIb: return 915'000'000;
        case CaseKind::IIIc: return 16'000;
    }
    return 0;
}

long case_desk_range(CaseKind kind) {
    switch (kind) {
        case CaseKind::IIIa1: return 77;
        case CaseKind::IIIa2: return 10'000;
        case CaseKind::IIIb: return 10'000;
        case CaseKind::IIIc: return 16'000;
    }
    return 0;
}

long case_param_min(CaseKind kind) {
    return kind == CaseKind::IIIb ? 4 : 2;
}

namespace {

// one expansion pass at fixed precision; empty optional when a partial
// quotient could not be certified
std::optional<ConvergentRun> expand_once(const Ball& value, const Int& q_limit,
                                         mpfr_prec_t prec) {
    ConvergentRun run;
    run.bits = prec;
    Ball x = value;
    Int p_prev = 1, q_prev = 0, p = 0, q = 1;  // p/q after first quotient
    bool first = true;
    while (true) {
        Int a;
        if (!x.floor_certified(a)) return std::nullopt;
        Int p_cur, q_cur;
        if (first) {
            p_cur = a;
            q_cur = 1;
            p_prev = 1;
            q_prev = 0;
            first = false;
        } else {
            p_cur = a * p + p_prev;
            q_cur = a * q + q_prev;
            p_prev = p;
            q_prev = q;
        }
        p = p_cur;
        q = q_cur;
        if (q >= q_limit) {
            run.next = {p, q};
            return run;
        }
        run.kept.push_back({p, q});
        Ball rem = x - Ball::exact(a, prec);
        if (rem.contains_zero()) {
            // exactly zero means the value is rational and the expansion ends
            if (rem.width_exponent() == LONG_MIN &&
                mpfr_zero_p(rem.lo()) && mpfr_zero_p(rem.hi())) {
                run.terminated = true;
                return run;
            }
            return std::nullopt;  // cannot certify the next quotient
        }
        x = Ball::exact(1, prec) / rem;
    }
}

}  // namespace

ConvergentRun certified_convergents(const std::function<Ball(mpfr_prec_t)>& value,
                                    const Int& q_limit, mpfr_prec_t prec0,
                                    mpfr_prec_t prec_cap) {
    for (mpfr_prec_t p = prec0; p <= prec_cap; p *= 2) {
        auto lo = expand_once(value(p), q_limit, p);
        if (!lo) continue;
        auto hi = expand_once(value(p * 2), q_limit, p * 2);
        if (!hi) continue;
        if (lo->kept == hi->kept && lo->next == hi->next &&
            lo->terminated == hi->terminated) {
            lo->certified = true;
            return *lo;
        }
    }
    ConvergentRun failed;
    failed.certified = false;
    return failed;
}

CaseBounds reduction_bounds(long c, mpfr_prec_t prec) {
    if (c < 2) throw std::domain_error("reduction bounds need c >= 2");
    CaseBounds out;
    out.bits = prec;
    AlgebraicContext ctx = AlgebraicContext::build(c * c + 1, prec);
    Ball mmp = ctx.mu * ctx.muP;
    Ball tt = (ctx.theta + 1) * (ctx.thetaP + 1);
    Ball log2c = Ball::exact(2 * c, prec).log();
    Ball c3 = Ball::exact(c, prec).pow_ui(3);
    Ball delta1 = 1 / (c3 * log2c);
    Ball delta2 = 1 / (2 * Ball::exact(c, prec) * log2c);
    out.b1 = mmp / tt.pow(delta1);
    out.b2 = tt / mmp.pow(delta2);
    Truth f1 = (Ball::ratio(3, 2, prec) * c3).less(out.b1);
    Truth f2 = Ball::exact(c, prec).less(out.b2);
    out.floors_hold = certainly(f1) && certainly(f2);
    return out;
}

namespace {

// everything about one parameter's problem at one working precision
struct CaseWorkspace {
    CaseKind kind;
    long parameter;
    long a;  // a = parameter for IIIb, c^2+1 otherwise
    mpfr_prec_t prec;
    AlgebraicContext ctx;
    Ball target;       // the number whose convergents are scanned
    Ball l1, l2;       // IIIa cases
    Ball bound_base;   // B1/B2 for IIIa, (7/4)sqrt(a) for IIIb, 2c^2 for IIIc
    Ball arc;          // IIIb/IIIc: the principal argument
    Ball pi;

    CaseWorkspace(CaseKind k, long param, mpfr_prec_t p)
        : kind(k),
          parameter(param),
          a(k == CaseKind::IIIb ? param : param * param + 1),
          prec(p),
          ctx(AlgebraicContext::build(a, p)) {
        pi = Ball::pi(p);
        switch (kind) {
            case CaseKind::IIIa1: {
                long c = parameter;
                l1 = (ctx.beta * ctx.muP.square()).log();
                l2 = ((ctx.thetaP + 1) / (ctx.thetaP - 1)).log();
                Ball log2c = Ball::exact(2 * c, p).log();
                Ball delta = 1 / (Ball::exact(c, p).pow_ui(3) * log2c);
                bound_base = (ctx.mu * ctx.muP) /
                             ((ctx.theta + 1) * (ctx.thetaP + 1)).pow(delta);
                target = l1 / l2;
                break;
            }
            case CaseKind::IIIa2: {
                long c = parameter;
                l1 = ((ctx.theta + 1) / (ctx.theta - 1)).log();
                l2 = (ctx.alpha * ctx.mu.square()).log();
                Ball log2c = Ball::exact(2 * c, p).log();
                Ball delta = 1 / (2 * Ball::exact(c, p) * log2c);
                bound_base = ((ctx.theta + 1) * (ctx.thetaP + 1)) /
                             (ctx.mu * ctx.muP).pow(delta);
                target = l1 / l2;
                break;
            }
            case CaseKind::IIIb: {
                // Arg((1+xi i)/(1-xi i)) = 2 atan(xi); xi > 0 keeps the
                // argument inside the principal branch
                if (!certainly(ctx.xi.sign()))
                    throw std::runtime_error("xi must be certified positive");
                arc = 2 * ctx.xi.atan();
                target = arc / pi;
                bound_base = Ball::ratio(7, 4, p) * Ball::exact(a, p).sqrt();
                break;
            }
            case CaseKind::IIIc: {
                if (!certainly(ctx.phi.sign()))
                    throw std::runtime_error("phi must be certified positive");
                arc = 2 * (ctx.phi / parameter).atan();
                target = arc / pi;
                bound_base = Ball::exact(2 * parameter * parameter, p);
                break;
            }
        }
    }

    // right-hand side of the firing inequality at denominator q
    Ball rhs(const Int& q) const {
        Ball qq = Ball::exact(q, prec);
        switch (kind) {
            case CaseKind::IIIa1:
                return Ball::ratio(32, 5, prec) /
                       (qq * l2 * bound_base.pow(Ball::exact(q, prec)));
            case CaseKind::IIIa2:
                return Ball::ratio(663, 100, prec) /
                       (qq * l2 * bound_base.pow(Ball::exact(q, prec)));
            case CaseKind::IIIb:
                return Ball::ratio(481, 100, prec) /
                       (pi * qq * bound_base.pow(Ball::exact(q, prec)));
            case CaseKind::IIIc:
                return Ball::ratio(4781, 1000, prec) /
                       (pi * qq * bound_base.pow(Ball::exact(q, prec)));
        }
        return Ball::whole_line(prec);
    }

    // |Lambda| for a convergent p/q (or a direct pair v = p, u = q)
    Ball lambda_abs(const Int& p, const Int& q) const {
        switch (kind) {
            case CaseKind::IIIa1:
            case CaseKind::IIIa2:
                return (Ball::exact(q, prec) * l1 - Ball::exact(p, prec) * l2).abs();
            case CaseKind::IIIb:
            case CaseKind::IIIc:
                return (Ball::exact(q, prec) * arc - Ball::exact(p, prec) * pi).abs();
        }
        return Ball::whole_line(prec);
    }
};

struct SecondaryShape {
    long bound_num, bound_den;  // the leading constant as a fraction
    bool exp_offset_three_halves;  // exponent 2m + 3/2 rather than 2m + 1/2
    SequenceKind kind;
    bool index_even;  // test term index 2m (true) or 2m+1 / 2m+1 (false)
};

SecondaryShape secondary_shape(CaseKind kind) {
    switch (kind) {
        case CaseKind::IIIa1: return {21, 10, true, SequenceKind::T, false};   // t_{2m+1}
        case CaseKind::IIIa2: return {269, 125, false, SequenceKind::T, true}; // t_{2m}
        case CaseKind::IIIb: return {2149, 1000, false, SequenceKind::W, true}; // w_{2m}
        case CaseKind::IIIc: return {2138, 1000, true, SequenceKind::W, false}; // w_{2m+1}
    }
    return {};
}

}  // namespace

SecondaryOutcome secondary_square_scan_with(CaseKind kind, long parameter,
                                            const Ball& lambda_abs, long& m_max,
                                            std::string& witness, long m_cap,
                                            const std::function<Int(long)>& term_at) {
    const SecondaryShape shape = secondary_shape(kind);
    long a = (kind == CaseKind::IIIb) ? parameter : parameter * parameter + 1;
    mpfr_prec_t prec = lambda_abs.precision();
    AlgebraicContext ctx = AlgebraicContext::build(a, prec);
    Ball coeff = Ball::ratio(shape.bound_num, shape.bound_den, prec);
    // beta^(2m + 1/2) or beta^(2m + 3/2), advanced by beta^2 per step
    Ball beta2 = ctx.beta.square();
    Ball power = ctx.beta.sqrt() * beta2;  // m = 1, offset 1/2
    if (shape.exp_offset_three_halves) power = power * ctx.beta;
    m_max = 0;
    if (lambda_abs.contains_zero()) return SecondaryOutcome::Undecided;
    SecondaryOutcome out = SecondaryOutcome::Reject;
    for (long m = 1; m <= m_cap; ++m) {
        Truth below = lambda_abs.less(coeff * power);
        if (below == Truth::False) break;  // certified inconsistent; so are larger m
        m_max = m;
        long idx = shape.index_even ? 2 * m : 2 * m + 1;
        Int term_val = term_at(idx);
        if (is_square(term_val)) {
            witness = "term(" + std::to_string(idx) + ") = " + term_val.get_str();
            out = SecondaryOutcome::Accept;
        }
        if (m == m_cap) return SecondaryOutcome::Undecided;
        power = power * beta2;
    }
    return out;
}

SecondaryOutcome secondary_square_scan(CaseKind kind, long parameter,
                                       const Ball& lambda_abs, long& m_max,
                                       std::string& witness, long m_cap) {
    const SecondaryShape shape = secondary_shape(kind);
    long a = (kind == CaseKind::IIIb) ? parameter : parameter * parameter + 1;
    RecurrenceParams params = RecurrenceParams::classical_a(Int(a));
    return secondary_square_scan_with(
        kind, parameter, lambda_abs, m_max, witness, m_cap,
        [&](long idx) { return term(params, shape.kind, idx); });
}

bool ReductionReport::violation() const {
    for (const auto& f : fired)
        if (f.outcome == SecondaryOutcome::Accept) return true;
    return false;
}

bool ReductionReport::notable() const {
    if (violation() || undecided > 0) return true;
    for (const auto& f : fired)
        if (f.m_max >= 1) return true;
    return false;
}

ReductionReport verify_case_parameter(CaseKind kind, long parameter, const CfOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    ReductionReport rep;
    rep.kind = kind;
    rep.parameter = parameter;
    if (parameter < case_param_min(kind))
        throw std::domain_error("parameter below the case minimum");
    rep.q_limit = case_q_limit(kind, parameter);

    double qbits = static_cast<double>(bit_length(rep.q_limit));
    mpfr_prec_t prec0 = std::max<mpfr_prec_t>(
        192, ((static_cast<mpfr_prec_t>(2 * qbits) + 96 + 63) / 64) * 64);

    auto target_at = [&](mpfr_prec_t p) {
        return CaseWorkspace(kind, parameter, p).target;
    };
    ConvergentRun run =
        certified_convergents(target_at, rep.q_limit, prec0, opt.prec_cap);
    if (!run.certified) {
        rep.undecided += 1;
        return rep;
    }
    rep.convergents = static_cast<long>(run.kept.size());
    rep.bits = run.bits;

    CaseWorkspace ws(kind, parameter, run.bits);

    // classical convergent quality: |target - p_i/q_i| < 1/(q_i q_{i+1})
    for (std::size_t i = 0; i < run.kept.size(); ++i) {
        const Int* q_next = nullptr;
        if (i + 1 < run.kept.size())
            q_next = &run.kept[i + 1].second;
        else if (run.next)
            q_next = &run.next->second;
        if (!q_next) continue;
        Ball diff = (ws.target - Ball::ratio(run.kept[i].first, run.kept[i].second,
                                             ws.prec)).abs();
        Ball cap = 1 / (Ball::exact(run.kept[i].second, ws.prec) *
                        Ball::exact(*q_next, ws.prec));
        if (diff.less(cap) == Truth::False)
            throw std::runtime_error("convergent quality bound violated");
    }

    auto process_pair = [&](const Int& p, const Int& q, bool direct) {
        // firing test with per-pair escalation
        mpfr_prec_t pr = ws.prec;
        Truth fires = Truth::Unknown;
        Ball lam;
        while (true) {
            CaseWorkspace w
                = (pr == ws.prec) ? ws : CaseWorkspace(kind, parameter, pr);
            Ball diff = (w.target - Ball::ratio(p, q, pr)).abs();
            fires = diff.less(w.rhs(q));
            if (fires != Truth::Unknown) {
                lam = w.lambda_abs(p, q);
                break;
            }
            if (pr >= opt.prec_cap) break;
            pr *= 2;
        }
        if (fires == Truth::Unknown) {
            rep.undecided += 1;
            return;
        }
        if (fires == Truth::False) return;
        FiredEntry fe;
        fe.num = p;
        fe.den = q;
        fe.direct = direct;
        long m_max = 0;
        std::string witness;
        SecondaryOutcome oc = SecondaryOutcome::Undecided;
        while (true) {
            oc = secondary_square_scan(kind, parameter, lam, m_max, witness, opt.m_cap);
            if (oc != SecondaryOutcome::Undecided || pr >= opt.prec_cap) break;
            pr *= 2;
            lam = CaseWorkspace(kind, parameter, pr).lambda_abs(p, q);
        }
        fe.lambda_mid = lam.approx();
        fe.lambda = lam.str(6);
        fe.m_max = m_max;
        fe.outcome = oc;
        fe.witness = witness;
        if (oc == SecondaryOutcome::Undecided) rep.undecided += 1;
        rep.fired.push_back(std::move(fe));
    };

    for (const auto& [p, q] : run.kept) process_pair(p, q, false);

    if (kind == CaseKind::IIIa2) {
        // exponents u in {1, 2} sit below the convergent argument's reach and
        // are enumerated directly: beyond |v| <= (u l1 + bound)/l2 the form
        // already exceeds the bound
        for (long u = 1; u <= 2; ++u) {
            Ball bound = Ball::ratio(663, 100, ws.prec) /
                         ws.bound_base.pow(Ball::exact(u, ws.prec));
            Ball vcap_ball = (Ball::exact(u, ws.prec) * ws.l1 + bound) / ws.l2;
            Int vcap;
            mpfr_t t;
            mpfr_init2(t, 64);
            mpfr_ceil(t, vcap_ball.hi());
            mpfr_get_z(vcap.get_mpz_t(), t, MPFR_RNDZ);
            mpfr_clear(t);
            for (Int v = -(vcap + 1); v <= vcap + 1; ++v) {
                Ball lam = (Ball::exact(u, ws.prec) * ws.l1 -
                            Ball::exact(v, ws.prec) * ws.l2).abs();
                Truth fires = lam.less(bound);
                mpfr_prec_t pr = ws.prec;
                while (fires == Truth::Unknown && pr < opt.prec_cap) {
                    pr *= 2;
                    CaseWorkspace w(kind, parameter, pr);
                    lam = (Ball::exact(u, pr) * w.l1 - Ball::exact(v, pr) * w.l2).abs();
                    Ball b2 = Ball::ratio(663, 100, pr) /
                              w.bound_base.pow(Ball::exact(u, pr));
                    fires = lam.less(b2);
                }
                if (fires == Truth::Unknown) {
                    rep.undecided += 1;
                    continue;
                }
                if (fires == Truth::False) continue;
                FiredEntry fe;
                fe.num = v;
                fe.den = u;
                fe.direct = true;
                long m_max = 0;
                std::string witness;
                SecondaryOutcome oc =
                    secondary_square_scan(kind, parameter, lam, m_max, witness, opt.m_cap);
                fe.lambda_mid = lam.approx();
                fe.lambda = lam.str(6);
                fe.m_max = m_max;
                fe.outcome = oc;
                fe.witness = witness;
                if (oc == SecondaryOutcome::Undecided) rep.undecided += 1;
                rep.fired.push_back(std::move(fe));
            }
        }
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string reduction_report_json(const ReductionReport& rep) {
    nlohmann::json j;
    j["record"] = "case";
    j["case"] = case_name(rep.kind);
    j["parameter"] = rep.parameter;
    j["q_limit"] = rep.q_limit.get_str();
    j["convergents"] = rep.convergents;
    j["bits"] = static_cast<long>(rep.bits);
    j["undecided"] = rep.undecided;
    j["verdict"] = rep.violation() ? "violation" : (rep.undecided ? "undecided" : "ok");
    nlohmann::json fired = nlohmann::json::array();
    for (const auto& f : rep.fired) {
        nlohmann::json e;
        e["num"] = f.num.get_str();
        e["den"] = f.den.get_str();
        e["direct"] = f.direct;
        e["lambda"] = f.lambda;
        e["m_max"] = f.m_max;
        e["outcome"] = f.outcome == SecondaryOutcome::Accept     ? "accept"
                       : f.outcome == SecondaryOutcome::Reject   ? "reject"
                                                                 : "undecided";
        if (!f.witness.empty()) e["witness"] = f.witness;
        fired.push_back(std::move(e));
    }
    j["fired"] = std::move(fired);
    return j.dump();
}

SweepResult sweep_case(CaseKind kind, long lo, long hi, const SweepOptions& opt,
                       bool keep_session_reports) {
    if (lo < case_param_min(kind)) lo = case_param_min(kind);
    std::string scan_id = "reduce case=" + case_name(kind) + " lo=" + std::to_string(lo) +
                          " hi=" + std::to_string(hi);
    SweepCheckpoint st;
    st.scan_id = scan_id;
    st.last_row = lo - 1;
    if (!opt.checkpoint_path.empty()) load_checkpoint(opt.checkpoint_path, scan_id, st);

    SweepResult out;
    const int nthreads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    const long chunk = std::max<long>(16, nthreads * 8);
    long session_rows = 0;
    for (long base = st.last_row + 1; base <= hi; base += chunk) {
        long top = std::min(hi, base + chunk - 1);
        if (opt.row_limit >= 0) {
            long remaining = opt.row_limit - session_rows;
            if (remaining <= 0) break;
            top = std::min(top, base + remaining - 1);
        }
        std::vector<ReductionReport> reports(static_cast<std::size_t>(top - base + 1));
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
        for (long p = base; p <= top; ++p)
            reports[static_cast<std::size_t>(p - base)] =
                verify_case_parameter(kind, p, opt.cf);
        for (auto& rep : reports) {
            st.bump("convergents", rep.convergents);
            st.bump("fired", static_cast<long long>(rep.fired.size()));
            st.bump("violations", rep.violation() ? 1 : 0);
            st.bump("undecided", rep.undecided);
            if (rep.notable()) st.add_line(reduction_report_json(rep));
            st.rows_done += 1;
            st.last_row += 1;
            session_rows += 1;
            if (keep_session_reports) out.session_reports.push_back(std::move(rep));
        }
        if (!opt.checkpoint_path.empty()) write_checkpoint(opt.checkpoint_path, st);
    }
    out.complete = st.last_row >= hi;
    out.params_done = st.rows_done;
    out.convergents = st.counters["convergents"];
    out.fired = st.counters["fired"];
    out.violations = st.counters["violations"];
    out.undecided = st.counters["undecided"];
    out.notable_lines = st.lines;
    return out;
}

}  // namespace nearsq
