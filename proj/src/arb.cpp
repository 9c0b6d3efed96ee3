#include "relq/arb.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace relq {

namespace {

int checked_digits(int digits) {
    if (digits < kMinDigits)
        throw DomainError("precision below " + std::to_string(kMinDigits) +
                          " digits: " + std::to_string(digits));
    return digits;
}

// Truncated decimal expansion: value = (-1)^negative * 0.digits * 10^exp10.
struct DecDigits {
    bool negative = false;
    std::string digits;
    long exp10 = 0;
};

DecDigits decimal_digits(mpfr_srcptr v, int n) {
    DecDigits out;
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(n), v, MPFR_RNDZ);
    if (s == nullptr) throw Error("mpfr_get_str failed");
    const char* p = s;
    if (*p == '-') {
        out.negative = true;
        ++p;
    }
    out.digits.assign(p);
    out.exp10 = static_cast<long>(e);
    mpfr_free_str(s);
    return out;
}

}  // namespace

mpfr_prec_t ArbReal::bits_for(int digits) {
    // 10^digits needs digits*log2(10) bits; keep a small binary cushion.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 16;
}

ArbReal::ArbReal(int digits) : digits_(checked_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_zero(v_, 1);
}

ArbReal::ArbReal(long value, int digits) : digits_(checked_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

ArbReal::ArbReal(const BigInt& value, int digits) : digits_(checked_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_z(v_, value.raw(), MPFR_RNDN);
}

ArbReal::ArbReal(const BigRat& value, int digits) : digits_(checked_digits(digits)) {
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_q(v_, value.raw(), MPFR_RNDN);
}

ArbReal::ArbReal(const ArbReal& o) : digits_(o.digits_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

ArbReal::ArbReal(ArbReal&& o) noexcept : digits_(o.digits_) {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

ArbReal& ArbReal::operator=(const ArbReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        digits_ = o.digits_;
    }
    return *this;
}

ArbReal& ArbReal::operator=(ArbReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    digits_ = o.digits_;
    return *this;
}

ArbReal::~ArbReal() { mpfr_clear(v_); }

ArbReal ArbReal::parse(std::string_view text, int digits) {
    // Shape check first so mpfr's laxer grammar (nan, inf, hex) is excluded.
    std::size_t i = 0;
    auto fail = [&]() -> void { throw DomainError("not a decimal number: '" + std::string(text) + "'"); };
    auto scan_digits = [&]() -> std::size_t {
        std::size_t s = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        return i - s;
    };
    if (text.empty()) fail();
    if (text[i] == '+' || text[i] == '-') ++i;
    if (scan_digits() == 0) fail();
    if (i < text.size() && text[i] == '.') {
        ++i;
        if (scan_digits() == 0) fail();
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        if (scan_digits() == 0) fail();
    }
    if (i != text.size()) fail();

    ArbReal r(digits);
    std::string buf(text);
    if (mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0) fail();
    return r;
}

ArbReal ArbReal::pow10(long k, int digits) {
    ArbReal r(digits);
    unsigned long mag = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1
                              : static_cast<unsigned long>(k);
    mpfr_ui_pow_ui(r.v_, 10, mag, MPFR_RNDN);
    if (k < 0) mpfr_si_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
}

ArbReal ArbReal::round_to(int digits) const {
    ArbReal r(digits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

ArbReal ArbReal::abs() const {
    ArbReal r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
}

ArbReal ArbReal::operator-() const {
    ArbReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

namespace {
int result_digits(const ArbReal& a, const ArbReal& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
}
}  // namespace

ArbReal operator+(const ArbReal& a, const ArbReal& b) {
    ArbReal r(result_digits(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
ArbReal operator-(const ArbReal& a, const ArbReal& b) {
    ArbReal r(result_digits(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
ArbReal operator*(const ArbReal& a, const ArbReal& b) {
    ArbReal r(result_digits(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
ArbReal operator/(const ArbReal& a, const ArbReal& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    ArbReal r(result_digits(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
ArbReal operator*(const ArbReal& a, long b) {
    ArbReal r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
ArbReal operator/(const ArbReal& a, long b) {
    if (b == 0) throw DomainError("division by zero");
    ArbReal r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
ArbReal operator/(long a, const ArbReal& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    ArbReal r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}
ArbReal operator+(const ArbReal& a, long b) {
    ArbReal r(a.precision());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
ArbReal operator-(const ArbReal& a, long b) {
    ArbReal r(a.precision());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
ArbReal operator-(long a, const ArbReal& b) {
    ArbReal r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

std::string ArbReal::to_string(int k) const {
    if (k <= 0 || k > digits_) k = digits_;
    if (is_zero()) return "0";
    DecDigits d = decimal_digits(v_, k);
    std::string out = d.negative ? "-" : "";
    long n = static_cast<long>(d.digits.size());
    if (d.exp10 >= 1 && d.exp10 <= n) {
        out += d.digits.substr(0, static_cast<std::size_t>(d.exp10));
        if (d.exp10 < n) out += "." + d.digits.substr(static_cast<std::size_t>(d.exp10));
    } else if (d.exp10 <= 0 && d.exp10 >= -3) {
        out += "0." + std::string(static_cast<std::size_t>(-d.exp10), '0') + d.digits;
    } else {
        out += d.digits.substr(0, 1);
        if (n > 1) out += "." + d.digits.substr(1);
        out += "e" + std::to_string(d.exp10 - 1);
    }
    return out;
}

namespace {

void check_domain(bool ok, const char* fn, const ArbReal& x) {
    if (!ok)
        throw DomainError(std::string(fn) + ": argument " + x.to_string(20) +
                          " outside the function's domain");
}

ArbReal unary(int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const ArbReal& x, int P) {
    ArbReal r(P);
    op(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

ArbReal arb_sqrt(const ArbReal& x, int P) {
    check_domain(x.sign() >= 0, "sqrt", x);
    return unary(mpfr_sqrt, x, P);
}

ArbReal arb_exp(const ArbReal& x, int P) { return unary(mpfr_exp, x, P); }

ArbReal arb_ln(const ArbReal& x, int P) {
    check_domain(x.sign() > 0, "ln", x);
    return unary(mpfr_log, x, P);
}

ArbReal arb_atanh(const ArbReal& x, int P) {
    check_domain(mpfr_cmp_si(x.abs().raw(), 1) < 0, "atanh", x);
    return unary(mpfr_atanh, x, P);
}

ArbReal arb_nth_root(const ArbReal& x, unsigned long n, int P) {
    if (n == 0) throw DomainError("nth_root: root index is zero");
    check_domain(n % 2 == 1 || x.sign() >= 0, "nth_root", x);
    ArbReal r(P);
    mpfr_rootn_ui(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

ArbReal arb_pow(const ArbReal& x, const ArbReal& y, int P) {
    check_domain(x.sign() > 0, "pow", x);
    ArbReal r(P);
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

ArbReal arb_pow_int(const ArbReal& x, const BigInt& e, int P) {
    if (x.is_zero() && e.sign() < 0) throw DomainError("pow: zero base with negative exponent");
    ArbReal r(P);
    mpfr_pow_z(r.raw(), x.raw(), e.raw(), MPFR_RNDN);
    return r;
}

BigInt nearest_int(const ArbReal& x) {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x.raw()) + 4);
    BigInt out;
    if (x.sign() >= 0) {
        mpfr_add_d(t, x.raw(), 0.5, MPFR_RNDN);
        mpfr_get_z(out.raw(), t, MPFR_RNDD);
    } else {
        mpfr_sub_d(t, x.raw(), 0.5, MPFR_RNDN);
        mpfr_get_z(out.raw(), t, MPFR_RNDU);
    }
    mpfr_clear(t);
    return out;
}

int digit_accuracy(const ArbReal& approx, const ArbReal& reference) {
    if (reference.is_zero()) throw DomainError("digit_accuracy: reference is zero");
    int shared = approx.precision() < reference.precision() ? approx.precision()
                                                            : reference.precision();
    int cap = shared - kGuardDigits;
    if (cap < 0) cap = 0;
    if (approx == reference) return cap;
    if (approx.is_zero() || approx.sign() != reference.sign()) return 0;

    DecDigits da = decimal_digits(approx.raw(), shared);
    DecDigits dr = decimal_digits(reference.raw(), shared);
    if (da.exp10 != dr.exp10) return 0;
    std::size_t m = 0;
    std::size_t limit = da.digits.size() < dr.digits.size() ? da.digits.size() : dr.digits.size();
    while (m < limit && da.digits[m] == dr.digits[m]) ++m;
    if (m == static_cast<std::size_t>(shared)) return cap;  // equal at shared precision
    return m == 0 ? 0 : static_cast<int>(m) - 1;
}

}  // namespace relq
