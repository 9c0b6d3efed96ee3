#pragma once

#include <gmp.h>

#include <compare>
#include <string>
#include <utility>

#include "relq/errors.hpp"

namespace relq {

// Exact arbitrary-size integer. Value semantics over GMP's mpz;
// immutable once constructed apart from assignment.
class BigInt {
public:
    BigInt() { mpz_init(z_); }
    BigInt(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
    explicit BigInt(const std::string& decimal) {
        if (mpz_init_set_str(z_, decimal.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw DomainError("not a decimal integer: '" + decimal + "'");
        }
    }
    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    BigInt operator-() const {
        BigInt r;
        mpz_neg(r.z_, z_);
        return r;
    }
    BigInt& operator+=(const BigInt& o) {
        mpz_add(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator-=(const BigInt& o) {
        mpz_sub(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator*=(const BigInt& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = mpz_cmp(a.z_, b.z_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    BigInt abs() const {
        BigInt r;
        mpz_abs(r.z_, z_);
        return r;
    }
    static BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }
    static BigInt pow(const BigInt& base, unsigned long e) {
        BigInt r;
        mpz_pow_ui(r.z_, base.z_, e);
        return r;
    }
    static BigInt binomial(unsigned long n, unsigned long k) {
        BigInt r;
        mpz_bin_uiui(r.z_, n, k);
        return r;
    }
    static BigInt factorial(unsigned long n) {
        BigInt r;
        mpz_fac_ui(r.z_, n);
        return r;
    }
    // Exact division; quotient must be exact.
    static BigInt div_exact(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_divexact(r.z_, a.z_, b.z_);
        return r;
    }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const { return mpz_get_si(z_); }

    std::string to_string() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

private:
    mpz_t z_;
};

// Exact rational, always in lowest terms with positive denominator.
class BigRat {
public:
    BigRat() { mpq_init(q_); }
    BigRat(long v) {  // NOLINT: implicit by design
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    BigRat(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw DomainError("rational with zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    BigRat(long num, long den) : BigRat(BigInt(num), BigInt(den)) {}
    explicit BigRat(const BigInt& v) {
        mpq_init(q_);
        mpz_set(mpq_numref(q_), v.raw());
    }
    BigRat(const BigRat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    BigRat(BigRat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    BigRat& operator=(const BigRat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    BigRat& operator=(BigRat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~BigRat() { mpq_clear(q_); }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        BigRat r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        BigRat r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        BigRat r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        if (b.is_zero()) throw DomainError("rational division by zero");
        BigRat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    BigRat operator-() const {
        BigRat r;
        mpq_neg(r.q_, q_);
        return r;
    }
    BigRat& operator+=(const BigRat& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }

    friend bool operator==(const BigRat& a, const BigRat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
        int c = mpq_cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    BigRat abs() const {
        BigRat r;
        mpq_abs(r.q_, q_);
        return r;
    }
    // Integer power with negative exponents allowed (inverts), base 0^neg rejected.
    static BigRat pow(const BigRat& base, long e) {
        if (e == 0) return BigRat(1);
        if (base.is_zero() && e < 0) throw DomainError("zero raised to a negative power");
        unsigned long mag = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1
                                  : static_cast<unsigned long>(e);
        BigRat r;
        mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), mag);
        mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), mag);
        if (e < 0) mpq_inv(r.q_, r.q_);
        return r;
    }

    BigInt numerator() const {
        BigInt r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    BigInt denominator() const {
        BigInt r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    std::string to_string() const {
        std::string s = numerator().to_string();
        if (!is_integer()) s += "/" + denominator().to_string();
        return s;
    }

    mpq_srcptr raw() const { return q_; }

private:
    mpq_t q_;
};

}  // namespace relq
