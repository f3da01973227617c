#include "nearsq/ball.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>

namespace nearsq {

namespace {
constexpr mpfr_prec_t kMinPrec = 16;
}

Ball::Ball() : Ball(64) {
    mpfr_set_inf(lo_, -1);
    mpfr_set_inf(hi_, 1);
}

Ball::Ball(mpfr_prec_t prec) : prec_(std::max<mpfr_prec_t>(prec, kMinPrec)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_nan(lo_);
    mpfr_set_nan(hi_);
}

Ball::Ball(const Ball& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, kMinPrec);
    mpfr_init2(hi_, kMinPrec);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Ball& Ball::operator=(const Ball& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Ball::~Ball() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Ball Ball::exact(long v, mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_si(b.lo_, v, MPFR_RNDD);
    mpfr_set_si(b.hi_, v, MPFR_RNDU);
    return b;
}

Ball Ball::exact(const Int& v, mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_z(b.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(b.hi_, v.get_mpz_t(), MPFR_RNDU);
    return b;
}

Ball Ball::ratio(const Int& num, const Int& den, mpfr_prec_t prec) {
    mpq_class q(num, den);
    q.canonicalize();
    Ball b(prec);
    mpfr_set_q(b.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.hi_, q.get_mpq_t(), MPFR_RNDU);
    return b;
}

Ball Ball::ratio(long num, long den, mpfr_prec_t prec) {
    return ratio(Int(num), Int(den), prec);
}

Ball Ball::pi(mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_const_pi(b.lo_, MPFR_RNDD);
    mpfr_const_pi(b.hi_, MPFR_RNDU);
    return b;
}

Ball Ball::whole_line(mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_inf(b.lo_, -1);
    mpfr_set_inf(b.hi_, 1);
    return b;
}

Ball Ball::from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set(b.lo_, lo, MPFR_RNDD);
    mpfr_set(b.hi_, hi, MPFR_RNDU);
    return b;
}

bool Ball::valid() const {
    return mpfr_number_p(lo_) && mpfr_number_p(hi_) && mpfr_lessequal_p(lo_, hi_);
}

Ball Ball::to_prec(mpfr_prec_t prec) const {
    return from_endpoints(lo_, hi_, prec);
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Ball Ball::operator-() const {
    Ball r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Ball operator*(const Ball& a, const Ball& b) {
    Ball r(std::max(a.prec_, b.prec_));
    if (!a.valid() || !b.valid()) return Ball::whole_line(r.prec_);
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lo: minimum of the four products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    // hi: maximum of the four rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    if (!a.valid() || !b.valid() || b.contains_zero()) return Ball::whole_line(prec);
    Ball r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ball Ball::sqrt() const {
    if (!valid() || mpfr_sgn(lo_) < 0) return whole_line(prec_);
    Ball r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ball Ball::log() const {
    if (!valid() || mpfr_sgn(lo_) <= 0) return whole_line(prec_);
    Ball r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ball Ball::exp() const {
    if (!valid()) return whole_line(prec_);
    Ball r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ball Ball::atan() const {
    if (!valid()) return whole_line(prec_);
    Ball r(prec_);
    mpfr_atan(r.lo_, lo_, MPFR_RNDD);
    mpfr_atan(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ball Ball::abs() const {
    if (!valid()) return whole_line(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    Ball r(prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_less_p(r.hi_, hi_)) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ball Ball::square() const {
    Ball a = abs();
    if (!a.valid()) return a;
    Ball r(prec_);
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Ball Ball::pow_ui(unsigned long e) const {
    if (!valid()) return whole_line(prec_);
    if (e == 0) return exact(1, prec_);
    if (e % 2 == 0 && mpfr_sgn(lo_) < 0) {
        // even powers factor through |x|
        Ball a = abs();
        Ball r(prec_);
        mpfr_pow_ui(r.lo_, a.lo_, e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, a.hi_, e, MPFR_RNDU);
        return r;
    }
    // x^e is monotone increasing for odd e, and for even e once lo >= 0
    Ball r(prec_);
    mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
    return r;
}

Ball Ball::pow(const Ball& e) const {
    return (e * log()).exp();
}

Truth Ball::less(const Ball& o) const {
    if (mpfr_less_p(hi_, o.lo_)) return Truth::True;
    if (mpfr_greaterequal_p(lo_, o.hi_)) return Truth::False;
    return Truth::Unknown;
}

Truth Ball::sign() const {
    if (!valid()) return Truth::Unknown;
    if (mpfr_sgn(lo_) > 0) return Truth::True;
    if (mpfr_sgn(hi_) < 0) return Truth::False;
    return Truth::Unknown;
}

bool Ball::contains_zero() const {
    if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) return true;
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Ball::contains_ratio(const Int& num, const Int& den) const {
    if (!valid()) return true;
    mpq_class q(num, den);
    q.canonicalize();
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Ball::floor_certified(Int& out) const {
    if (!valid()) return false;
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_floor(t, lo_);
    Int flo;
    mpfr_get_z(flo.get_mpz_t(), t, MPFR_RNDZ);
    mpfr_floor(t, hi_);
    Int fhi;
    mpfr_get_z(fhi.get_mpz_t(), t, MPFR_RNDZ);
    mpfr_clear(t);
    if (flo != fhi) return false;
    out = flo;
    return true;
}

long Ball::width_exponent() const {
    if (!valid()) return LONG_MAX;
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    long e;
    if (mpfr_zero_p(w))
        e = LONG_MIN;
    else
        e = static_cast<long>(mpfr_get_exp(w));
    mpfr_clear(w);
    return e;
}

double Ball::approx() const {
    mpfr_t m;
    mpfr_init2(m, 64);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

std::string Ball::str(int digits) const {
    if (!valid()) return "[invalid]";
    mpfr_t m, r;
    mpfr_init2(m, prec_);
    mpfr_init2(r, 64);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    mpfr_sub(r, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(r, r, 1, MPFR_RNDU);
    char* s1 = nullptr;
    char* s2 = nullptr;
    mpfr_asprintf(&s1, "%.*Rg", digits, m);
    mpfr_asprintf(&s2, "%.2Rg", r);
    std::string out = std::string(s1) + " +/- " + s2;
    mpfr_free_str(s1);
    mpfr_free_str(s2);
    mpfr_clear(m);
    mpfr_clear(r);
    return out;
}

}  // namespace nearsq
