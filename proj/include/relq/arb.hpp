#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "relq/bigint.hpp"
#include "relq/errors.hpp"

namespace relq {

// Extra decimal digits carried by every evaluation pipeline; results are
// computed at P + kGuardDigits and rounded to P at the boundary.
inline constexpr int kGuardDigits = 10;

// Smallest supported working precision, in decimal digits.
inline constexpr int kMinDigits = 10;

// Arbitrary-precision real number tagged with its working precision in
// decimal digits. Values are immutable after construction (assignment
// replaces the whole value) and safe to share across threads.
//
// Binary-op results carry max(precision of operands). Printing truncates
// toward zero, so the digits shown are the leading digits of the stored
// value's decimal expansion.
class ArbReal {
public:
    ArbReal() : ArbReal(kMinDigits) {}
    explicit ArbReal(int digits);
    ArbReal(long value, int digits);
    ArbReal(const BigInt& value, int digits);
    ArbReal(const BigRat& value, int digits);
    ArbReal(const ArbReal& o);
    ArbReal(ArbReal&& o) noexcept;
    ArbReal& operator=(const ArbReal& o);
    ArbReal& operator=(ArbReal&& o) noexcept;
    ~ArbReal();

    // Decimal string -> value, correctly rounded at `digits`.
    // Accepts [+-]digits[.digits][e[+-]exp].
    static ArbReal parse(std::string_view text, int digits);

    static ArbReal pow10(long k, int digits);

    int precision() const { return digits_; }
    ArbReal round_to(int digits) const;

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    ArbReal abs() const;
    ArbReal operator-() const;

    friend ArbReal operator+(const ArbReal& a, const ArbReal& b);
    friend ArbReal operator-(const ArbReal& a, const ArbReal& b);
    friend ArbReal operator*(const ArbReal& a, const ArbReal& b);
    friend ArbReal operator/(const ArbReal& a, const ArbReal& b);
    friend ArbReal operator*(const ArbReal& a, long b);
    friend ArbReal operator*(long a, const ArbReal& b) { return b * a; }
    friend ArbReal operator/(const ArbReal& a, long b);
    friend ArbReal operator/(long a, const ArbReal& b);
    friend ArbReal operator+(const ArbReal& a, long b);
    friend ArbReal operator-(const ArbReal& a, long b);
    friend ArbReal operator-(long a, const ArbReal& b);

    friend bool operator==(const ArbReal& a, const ArbReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const ArbReal& a, const ArbReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const ArbReal& a, const ArbReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const ArbReal& a, const ArbReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const ArbReal& a, const ArbReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const ArbReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const ArbReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const ArbReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }

    // Exactly `k` significant digits (truncated), fixed notation when the
    // decimal point lands inside or just left of the digits, scientific
    // otherwise. k defaults to the value's own precision.
    std::string to_string(int k = 0) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    static mpfr_prec_t bits_for(int digits);

private:
    mpfr_t v_;
    int digits_;
};

// Elementary functions; results correct to within 2 ulp at precision P.
ArbReal arb_sqrt(const ArbReal& x, int P);
ArbReal arb_exp(const ArbReal& x, int P);
ArbReal arb_ln(const ArbReal& x, int P);
ArbReal arb_atanh(const ArbReal& x, int P);
ArbReal arb_nth_root(const ArbReal& x, unsigned long n, int P);

// x^y = exp(y ln x) for real y; requires x > 0.
ArbReal arb_pow(const ArbReal& x, const ArbReal& y, int P);

// Integer exponent; any x (0^negative rejected).
ArbReal arb_pow_int(const ArbReal& x, const BigInt& e, int P);

// Closest integer; halfway cases round away from zero.
BigInt nearest_int(const ArbReal& x);

// How many leading decimal digits of `approx` agree with `reference`,
// counted after the first significand digit -- the number of "accurate
// digits" in the sense of comparing printed decimal expansions. Returns
// min(precision) - kGuardDigits when the operands are equal at shared
// precision. reference must be nonzero.
int digit_accuracy(const ArbReal& approx, const ArbReal& reference);

}  // namespace relq
