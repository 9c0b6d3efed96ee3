#pragma once

#include <string>

#include "relq/arb.hpp"
#include "relq/bigint.hpp"

namespace relq {

// Identifier of a named constant or special series. Zeta takes an integer
// s >= 2; Li3 a rational argument with |x| <= 1/2, or x = 1 (which is
// zeta(3)).
struct ConstantId {
    enum class Tag { Pi, Ln2, Asinh1, Catalan, EulerGamma, ZetaInt, Li3, SeriesHuvent, SeriesCho };

    Tag tag = Tag::Pi;
    long s = 0;  // ZetaInt parameter
    BigRat x;    // Li3 argument

    static ConstantId pi() { return {Tag::Pi, 0, {}}; }
    static ConstantId ln2() { return {Tag::Ln2, 0, {}}; }
    static ConstantId asinh1() { return {Tag::Asinh1, 0, {}}; }
    static ConstantId catalan() { return {Tag::Catalan, 0, {}}; }
    static ConstantId euler_gamma() { return {Tag::EulerGamma, 0, {}}; }
    static ConstantId zeta(long s) { return {Tag::ZetaInt, s, {}}; }
    static ConstantId li3(BigRat arg) { return {Tag::Li3, 0, std::move(arg)}; }
    static ConstantId series_huvent() { return {Tag::SeriesHuvent, 0, {}}; }
    static ConstantId series_cho() { return {Tag::SeriesCho, 0, {}}; }

    // Canonical name; also the memo-cache key.
    std::string key() const;
};

// Value correct to within 10^(1-P) relative error. Deterministic per
// (id, P); memoized, and a request at P' <= P is served by rounding the
// cached higher-precision value. Thread-safe.
ArbReal eval_constant(const ConstantId& id, int P);

// Exact B_{2n} by the defining recurrence; even positive index up to the
// configurable cap. Memoized.
BigRat bernoulli(long even_index);
long bernoulli_index_cap();
void set_bernoulli_index_cap(long cap);

// zeta(2n) = (-1)^(n-1) 2^(2n-1) B_{2n} pi^(2n) / (2n)!
ArbReal zeta_even(long n, int P);

// sum_{k>=1} (-1)^(k+1) / (k^3 2^k C(2k,k))  =  1/4 zeta(3) - 1/6 ln^3 2
ArbReal series_huvent(int P);

// pi^2 sum_{k>=1} zeta(2k)/((k+1) 16^k)
//   =  pi^2/2 - pi^2/2 ln 2 + 35/4 zeta(3) - 4 pi G
ArbReal series_cho(int P);

}  // namespace relq
