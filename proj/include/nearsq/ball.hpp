#pragma once

#include <mpfr.h>

#include <string>

#include "nearsq/int.hpp"

namespace nearsq {

enum class Truth { False, True, Unknown };

// A real number carried with a guaranteed enclosure. Stored as directed-rounded
// endpoints; mid() and rad() give the equivalent center/absolute-error view.
// Every operation rounds outward, so the true value always stays inside.
// Comparisons answer True/False only when the enclosures separate.
class Ball {
public:
    Ball();  // whole line (unknown value)
    explicit Ball(mpfr_prec_t prec);
    Ball(const Ball& o);
    Ball(Ball&& o) noexcept;
    Ball& operator=(const Ball& o);
    Ball& operator=(Ball&& o) noexcept;
    ~Ball();

    static Ball exact(long v, mpfr_prec_t prec);
    static Ball exact(const Int& v, mpfr_prec_t prec);
    static Ball ratio(const Int& num, const Int& den, mpfr_prec_t prec);
    static Ball ratio(long num, long den, mpfr_prec_t prec);
    static Ball pi(mpfr_prec_t prec);
    static Ball whole_line(mpfr_prec_t prec);
    static Ball from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    bool valid() const;  // finite endpoints
    Ball to_prec(mpfr_prec_t prec) const;  // outward re-rounding

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    friend Ball operator/(const Ball& a, const Ball& b);
    Ball operator-() const;

    Ball sqrt() const;  // whole line unless lo >= 0
    Ball log() const;   // whole line unless lo > 0
    Ball exp() const;
    Ball atan() const;
    Ball abs() const;
    Ball square() const;
    Ball pow_ui(unsigned long e) const;       // nonnegative base
    Ball pow(const Ball& e) const;            // exp(e log x), positive base

    Truth less(const Ball& o) const;          // this < o
    Truth greater(const Ball& o) const { return o.less(*this); }
    Truth sign() const;  // True: > 0, False: < 0, Unknown: straddles or invalid
    bool contains_zero() const;
    bool contains_ratio(const Int& num, const Int& den) const;

    // floor when both endpoints agree on it
    bool floor_certified(Int& out) const;

    // width as a power of two: smallest k with hi - lo <= 2^k (INT_MIN if exact)
    long width_exponent() const;

    double approx() const;           // midpoint, double precision
    std::string str(int digits = 8) const;  // "mid ± rad" display form

    // low-level access for the few call sites that need endpoints
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

inline Ball operator+(const Ball& a, long b) { return a + Ball::exact(b, a.precision()); }
inline Ball operator-(const Ball& a, long b) { return a - Ball::exact(b, a.precision()); }
inline Ball operator+(long a, const Ball& b) { return Ball::exact(a, b.precision()) + b; }
inline Ball operator-(long a, const Ball& b) { return Ball::exact(a, b.precision()) - b; }
inline Ball operator*(const Ball& a, long b) { return a * Ball::exact(b, a.precision()); }
inline Ball operator*(long a, const Ball& b) { return Ball::exact(a, b.precision()) * b; }
inline Ball operator/(const Ball& a, long b) { return a / Ball::exact(b, a.precision()); }
inline Ball operator/(long a, const Ball& b) { return Ball::exact(a, b.precision()) / b; }

inline bool certainly(Truth t) { return t == Truth::True; }

}  // namespace nearsq
