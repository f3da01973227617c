#include "nearsq/units.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nearsq {

namespace {

int degree(const ZPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g; the multiplier count
// is normalized even when a reduction step drops the degree by more than one
ZPoly prem(ZPoly f, const ZPoly& g) {
    int df = degree(f), dg = degree(g);
    const Int& lg = g[dg];
    int pending = df - dg + 1;
    while (df >= dg && df >= 0) {
        Int coef = f[df];
        for (int i = 0; i <= df; ++i) f[i] *= lg;
        --pending;
        for (int i = 0; i <= dg; ++i) f[df - dg + i] -= coef * g[i];
        trim(f);
        df = degree(f);
    }
    if (pending > 0) {
        Int scale = pow_ui(lg, static_cast<unsigned long>(pending));
        for (Int& c : f) c *= scale;
    }
    return f;
}

}  // namespace

Int resultant(ZPoly f, ZPoly g) {
    trim(f);
    trim(g);
    if (f.empty() || g.empty()) return 0;
    int sign = 1;
    if (degree(f) < degree(g)) {
        if ((degree(f) & 1) && (degree(g) & 1)) sign = -sign;
        std::swap(f, g);
    }
    Int gg = 1, hh = 1;
    while (true) {
        int df = degree(f), dg = degree(g);
        if (dg < 0) return 0;
        if (dg == 0) {
            // res = g^(deg f) / h^(deg f - 1), with the accumulated sign
            Int num = pow_ui(g[0], static_cast<unsigned long>(df));
            Int den = (df >= 1) ? pow_ui(hh, static_cast<unsigned long>(df - 1)) : Int(1);
            Int r;
            if (df >= 1)
                mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            else
                r = 1;  // two constants
            return sign * r;
        }
        int d = df - dg;
        if ((df & 1) && (dg & 1)) sign = -sign;
        ZPoly r = prem(f, g);
        f = std::move(g);
        // g = r / (gg * hh^d)
        Int div = gg * pow_ui(hh, static_cast<unsigned long>(d));
        g = std::move(r);
        for (Int& c : g) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
        gg = f[degree(f)];
        // h = g^d / h^(d-1)
        if (d > 0) {
            Int num = pow_ui(gg, static_cast<unsigned long>(d));
            Int den = pow_ui(hh, static_cast<unsigned long>(d - 1));
            mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
}

Int resultant_sylvester(const ZPoly& f0, const ZPoly& g0) {
    ZPoly f = f0, g = g0;
    trim(f);
    trim(g);
    if (f.empty() || g.empty()) return 0;
    int m = degree(f), n = degree(g);
    if (m == 0 && n == 0) return 1;
    int size = m + n;
    std::vector<std::vector<Int>> M(size, std::vector<Int>(size, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = g[n - j];
    // Bareiss fraction-free elimination
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < size; ++i)
                if (M[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                Int v = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[size - 1][size - 1];
}

ZPoly minimal_poly(Generator gen, long a) {
    switch (gen) {
        case Generator::Theta:
            return {Int(a + 2), Int(0), Int(-(a + 2)), Int(0), Int(1)};
        case Generator::Phi:
            return {Int(-(a - 2)), Int(0), Int(a - 2), Int(0), Int(1)};
        case Generator::Xi:
            return {Int(-(a - 2)), Int(0), Int(-(a - 2)), Int(0), Int(1)};
    }
    throw std::logic_error("unreachable");
}

Int absolute_norm(const OrderElement& e) {
    ZPoly g = {e.x, e.y, e.z, e.w};
    return resultant(minimal_poly(e.gen, e.a), std::move(g));
}

OrderElement multiply(const OrderElement& lhs, const OrderElement& rhs) {
    if (lhs.gen != rhs.gen || lhs.a != rhs.a)
        throw std::invalid_argument("elements live in different orders");
    std::array<Int, 7> c{};
    std::array<Int, 4> p{lhs.x, lhs.y, lhs.z, lhs.w};
    std::array<Int, 4> q{rhs.x, rhs.y, rhs.z, rhs.w};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i + j] += p[i] * q[j];
    // reduce with r^4 = s2 r^2 + s0
    ZPoly mp = minimal_poly(lhs.gen, lhs.a);
    Int s2 = -mp[2], s0 = -mp[0];
    for (int i = 6; i >= 4; --i) {
        c[i - 2] += s2 * c[i];
        c[i - 4] += s0 * c[i];
        c[i] = 0;
    }
    return OrderElement{lhs.gen, lhs.a, c[0], c[1], c[2], c[3]};
}

namespace {

Ball eval_element(const OrderElement& e, const Ball& r, mpfr_prec_t prec) {
    Ball acc = Ball::exact(e.w, prec);
    acc = acc * r + Ball::exact(e.z, prec);
    acc = acc * r + Ball::exact(e.y, prec);
    acc = acc * r + Ball::exact(e.x, prec);
    return acc;
}

Ball det3(const std::array<std::array<Ball, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

IndependenceCheck separation(const Ball& det, int rank, mpfr_prec_t prec) {
    IndependenceCheck ic;
    ic.rank = rank;
    ic.bits = prec;
    ic.det = det.str(8);
    Ball ad = det.abs();
    ic.det_magnitude = ad.approx();
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, det.hi(), det.lo(), MPFR_RNDU);
    ic.det_radius = mpfr_get_d(w, MPFR_RNDU) / 2;
    mpfr_clear(w);
    ic.separated = !det.contains_zero() && ic.det_magnitude > 10 * ic.det_radius;
    return ic;
}

}  // namespace

bool UnitGroupReport::ok() const {
    if (!independence.separated) return false;
    for (const auto& g : generators)
        if (!g.unit) return false;
    return true;
}

UnitGroupReport check_theta_units(long c, mpfr_prec_t prec) {
    if (c < 2) throw std::domain_error("theta family needs c >= 2");
    long a = c * c + 1;
    UnitGroupReport rep;
    rep.family = 't';
    rep.param = c;
    OrderElement alpha{Generator::Theta, a, Int(-1), Int(0), Int(1), Int(0)};
    OrderElement theta_plus{Generator::Theta, a, Int(1), Int(1), Int(0), Int(0)};
    OrderElement mu{Generator::Theta, a, Int(-1), Int(c), Int(1), Int(0)};
    for (auto [name, e] : {std::pair<const char*, OrderElement>{"alpha", alpha},
                           {"theta+1", theta_plus},
                           {"mu", mu}}) {
        Int n = absolute_norm(e);
        rep.generators.push_back({name, n, abs(n) == 1});
    }
    // embeddings theta, -theta, theta'; log absolute values
    AlgebraicContext ctx = AlgebraicContext::build(a, prec);
    std::array<Ball, 3> roots = {ctx.theta, -ctx.theta, ctx.thetaP};
    std::array<std::array<Ball, 3>, 3> m;
    std::array<OrderElement, 3> gens = {alpha, theta_plus, mu};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = eval_element(gens[i], roots[j], prec).abs().log();
    rep.independence = separation(det3(m), 3, prec);
    return rep;
}

UnitGroupReport check_phi_units(long a, mpfr_prec_t prec) {
    if (a < 4) throw std::domain_error("phi family needs a >= 4");
    UnitGroupReport rep;
    rep.family = 'p';
    rep.param = a;
    OrderElement beta{Generator::Phi, a, Int(1), Int(0), Int(-1), Int(0)};
    OrderElement one_plus{Generator::Phi, a, Int(1), Int(1), Int(0), Int(0)};
    for (auto [name, e] : {std::pair<const char*, OrderElement>{"beta", beta},
                           {"1+phi", one_plus}}) {
        Int n = absolute_norm(e);
        rep.generators.push_back({name, n, abs(n) == 1});
    }
    // embeddings phi -> phi and phi -> i*xi; |x + y(i xi) + z(i xi)^2 + w(i xi)^3|
    AlgebraicContext ctx = AlgebraicContext::build(a, prec);
    auto log_abs_complex = [&](const OrderElement& e) {
        Ball re = Ball::exact(e.x, prec) - Ball::exact(e.z, prec) * ctx.xi.square();
        Ball im = Ball::exact(e.y, prec) * ctx.xi -
                  Ball::exact(e.w, prec) * ctx.xi.pow_ui(3);
        return (re.square() + im.square()).log() / 2;
    };
    std::array<OrderElement, 2> gens = {beta, one_plus};
    std::array<std::array<Ball, 2>, 2> m;
    for (int i = 0; i < 2; ++i) {
        m[i][0] = eval_element(gens[i], ctx.phi, prec).abs().log();
        m[i][1] = log_abs_complex(gens[i]);
    }
    Ball det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    rep.independence = separation(det, 2, prec);
    return rep;
}

UnitGroupReport check_xi_units(long c, mpfr_prec_t prec) {
    if (c < 2) throw std::domain_error("xi family needs c >= 2");
    long a = c * c + 1;
    UnitGroupReport rep;
    rep.family = 'x';
    rep.param = c;
    OrderElement alpha{Generator::Xi, a, Int(1), Int(0), Int(1), Int(0)};
    OrderElement c_plus{Generator::Xi, a, Int(c), Int(1), Int(0), Int(0)};
    for (auto [name, e] : {std::pair<const char*, OrderElement>{"alpha", alpha},
                           {"c+xi", c_plus}}) {
        Int n = absolute_norm(e);
        rep.generators.push_back({name, n, abs(n) == 1});
    }
    AlgebraicContext ctx = AlgebraicContext::build(a, prec);
    auto log_abs_complex = [&](const OrderElement& e) {
        Ball re = Ball::exact(e.x, prec) - Ball::exact(e.z, prec) * ctx.phi.square();
        Ball im = Ball::exact(e.y, prec) * ctx.phi -
                  Ball::exact(e.w, prec) * ctx.phi.pow_ui(3);
        return (re.square() + im.square()).log() / 2;
    };
    std::array<OrderElement, 2> gens = {alpha, c_plus};
    std::array<std::array<Ball, 2>, 2> m;
    for (int i = 0; i < 2; ++i) {
        m[i][0] = eval_element(gens[i], ctx.xi, prec).abs().log();
        m[i][1] = log_abs_complex(gens[i]);
    }
    Ball det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    rep.independence = separation(det, 2, prec);
    return rep;
}

bool UnitSweepReport::ok() const {
    for (const auto& r : reports)
        if (!r.ok()) return false;
    return true;
}

UnitSweepReport verify_unit_groups(long c_min, long c_max, long a_min, long a_max,
                                   mpfr_prec_t prec, int threads) {
    struct Job {
        char fam;
        long p;
    };
    std::vector<Job> jobs;
    for (long c = std::max(2L, c_min); c <= c_max; ++c) jobs.push_back({'t', c});
    for (long a = std::max(4L, a_min); a <= a_max; ++a) jobs.push_back({'p', a});
    for (long c = std::max(2L, c_min); c <= c_max; ++c) jobs.push_back({'x', c});
    UnitSweepReport sweep;
    sweep.reports.resize(jobs.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        switch (jobs[i].fam) {
            case 't': sweep.reports[i] = check_theta_units(jobs[i].p, prec); break;
            case 'p': sweep.reports[i] = check_phi_units(jobs[i].p, prec); break;
            default: sweep.reports[i] = check_xi_units(jobs[i].p, prec); break;
        }
    }
    return sweep;
}

bool ConjugationReport::ok() const {
    for (const auto& id : identities)
        if (!id.holds) return false;
    return true;
}

ConjugationReport verify_conjugation_table(long c, mpfr_prec_t prec, mpfr_prec_t prec_cap) {
    if (c < 2) throw std::domain_error("conjugation table needs c >= 2");
    long a = c * c + 1;
    ConjugationReport rep;
    rep.c = c;
    for (mpfr_prec_t p = prec;; p = std::min<mpfr_prec_t>(p * 2, prec_cap)) {
        rep.identities.clear();
        rep.bits = p;
        AlgebraicContext ctx = AlgebraicContext::build(a, p);
        const Ball& th = ctx.theta;
        const Ball& tp = ctx.thetaP;
        auto residual = [&](const std::string& name, const Ball& r) {
            bool contains = r.contains_zero();
            bool tight = r.width_exponent() < -static_cast<long>(p) / 2;
            rep.identities.push_back({name, contains && tight, r.width_exponent()});
        };
        // theta -> -theta fixes alpha
        residual("alpha_fixed_by_negation", th.square() - 1 - ctx.alpha);
        // (1-theta)(1+theta) = -alpha, i.e. -theta+1 = -alpha (theta+1)^{-1}
        residual("theta_plus_negation", (1 - th) * (1 + th) + ctx.alpha);
        // (theta^2 - c theta - 1) mu = -beta
        residual("mu_negation", (th.square() - c * th - 1) * ctx.mu + ctx.beta);
        // theta -> theta' sends alpha to beta and mu to mu'
        residual("alpha_to_beta", tp.square() - 1 - ctx.beta);
        residual("mu_to_muP", tp.square() + c * tp - 1 - ctx.muP);
        // (1-theta')(1+theta') = -beta
        residual("thetaP_plus_negation", (1 - tp) * (1 + tp) + ctx.beta);
        // (theta'^2 - c theta' - 1) mu' = -alpha
        residual("muP_negation", (tp.square() - c * tp - 1) * ctx.muP + ctx.alpha);
        // theta theta' = sqrt(a+2)
        residual("theta_product", th * tp - Ball::exact(Int(a) + 2, p).sqrt());
        // (1 + c theta - theta^2)(1 - c theta - theta^2) = -beta
        residual("conjugate_product",
                 (1 + c * th - th.square()) * (1 - c * th - th.square()) + ctx.beta);
        bool all = rep.ok();
        if (all || p >= prec_cap) break;
    }
    return rep;
}

}  // namespace nearsq
