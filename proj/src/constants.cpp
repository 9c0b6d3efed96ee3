#include "relq/constants.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <vector>

namespace relq {

std::string ConstantId::key() const {
    switch (tag) {
        case Tag::Pi: return "pi";
        case Tag::Ln2: return "ln2";
        case Tag::Asinh1: return "asinh1";
        case Tag::Catalan: return "catalan";
        case Tag::EulerGamma: return "gamma";
        case Tag::ZetaInt: return "zeta:" + std::to_string(s);
        case Tag::Li3: return "li3:" + x.to_string();
        case Tag::SeriesHuvent: return "huvent";
        case Tag::SeriesCho: return "cho";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace {

std::mutex g_bernoulli_mutex;
std::vector<BigRat> g_bernoulli;  // B_0, B_1, ... computed so far
std::atomic<long> g_bernoulli_cap{200};

// Extends the table through index `idx` using
//   B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1,j) B_j.
const BigRat& bernoulli_unchecked(long idx) {
    std::lock_guard lock(g_bernoulli_mutex);
    if (g_bernoulli.empty()) {
        g_bernoulli.emplace_back(1);
        g_bernoulli.emplace_back(BigRat(-1, 2));
    }
    while (static_cast<long>(g_bernoulli.size()) <= idx) {
        long m = static_cast<long>(g_bernoulli.size());
        if (m % 2 == 1) {
            g_bernoulli.emplace_back(0);
            continue;
        }
        BigRat acc;
        for (long j = 0; j < m; ++j) {
            if (j > 1 && j % 2 == 1) continue;  // odd B_j vanish
            acc += BigRat(BigInt::binomial(static_cast<unsigned long>(m + 1),
                                           static_cast<unsigned long>(j))) *
                   g_bernoulli[static_cast<std::size_t>(j)];
        }
        g_bernoulli.emplace_back(-acc * BigRat(1, m + 1));
    }
    return g_bernoulli[static_cast<std::size_t>(idx)];
}

}  // namespace

long bernoulli_index_cap() { return g_bernoulli_cap.load(); }
void set_bernoulli_index_cap(long cap) { g_bernoulli_cap.store(cap); }

BigRat bernoulli(long even_index) {
    if (even_index < 2 || even_index % 2 != 0)
        throw DomainError("bernoulli: index must be even and >= 2, got " +
                          std::to_string(even_index));
    if (even_index > bernoulli_index_cap())
        throw DomainError("bernoulli: index " + std::to_string(even_index) +
                          " above cap " + std::to_string(bernoulli_index_cap()));
    return bernoulli_unchecked(even_index);
}

// ---------------------------------------------------------------------------
// Evaluators. Each works at D = P + kGuardDigits internally and rounds to P.

namespace {

ArbReal pi_value(int D) {
    ArbReal r(D);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

ArbReal ln2_value(int D) {
    // ln 2 = 2 atanh(1/3)
    return arb_atanh(ArbReal(BigRat(1, 3), D), D) * 2;
}

ArbReal asinh1_value(int D) {
    // ln(1 + sqrt 2) = atanh(1/sqrt 2)
    return arb_atanh(1 / arb_sqrt(ArbReal(2, D), D), D);
}

// G = 3/8 sum_{n>=0} 1/(C(2n,n) (2n+1)^2) + pi/8 ln(2 + sqrt 3)
ArbReal catalan_value(int D) {
    ArbReal sum(D);
    ArbReal eps = ArbReal::pow10(-D, 20);
    BigInt central(1);  // C(2n,n)
    for (long n = 0;; ++n) {
        BigInt den = central * BigInt((2 * n + 1) * (2 * n + 1));
        ArbReal term = 1 / ArbReal(den, D);
        sum = sum + term;
        if (term < eps) break;
        central = BigInt::div_exact(central * BigInt(2 * (2 * n + 1)), BigInt(n + 1));
    }
    ArbReal log_part = arb_ln(arb_sqrt(ArbReal(3, D), D) + 2, D);
    return (sum * 3 + pi_value(D) * log_part) / 8;
}

// zeta(3) = 5/2 sum_{k>=1} (-1)^(k-1) / (k^3 C(2k,k))
ArbReal zeta3_value(int D) {
    ArbReal sum(D);
    ArbReal eps = ArbReal::pow10(-D, 20);
    BigInt central(2);  // C(2k,k), starting at k = 1
    for (long k = 1;; ++k) {
        ArbReal term = 1 / ArbReal(central * BigInt(k) * BigInt(k) * BigInt(k), D);
        sum = (k % 2 == 1) ? sum + term : sum - term;
        if (term < eps) break;
        central = BigInt::div_exact(central * BigInt(2 * (2 * k + 1)), BigInt(k + 1));
    }
    return sum * 5 / 2;
}

// Euler-Maclaurin on harmonic sums:
//   gamma = H_N - ln N - 1/(2N) + sum_{k=1}^K B_{2k}/(2k N^{2k}) + R,
//   |R| <= |B_{2K+2}| / ((2K+2) N^{2K+2}).
ArbReal euler_gamma_value(int D) {
    int Dw = D + 5;
    if (bernoulli_index_cap() < 6)
        throw DomainError("bernoulli index cap too small for gamma evaluation");
    BigRat tail_limit(BigInt(1), BigInt::pow(BigInt(10), static_cast<unsigned long>(D + 2)));
    for (long N = 64;; N *= 2) {
        // Find K with the remainder bound under the threshold; Bernoulli
        // indices stay within the table cap or we retry with larger N.
        std::vector<BigRat> terms;
        bool ok = false;
        BigRat npow(BigInt(1), BigInt(N) * BigInt(N));  // N^(-2k)
        BigRat nsq_inv = npow;
        for (long k = 1; 2 * (k + 1) <= bernoulli_index_cap(); ++k) {
            terms.push_back(bernoulli(2 * k) * BigRat(BigInt(1), BigInt(2 * k)) * npow);
            BigRat bound = (bernoulli(2 * k + 2) *
                            BigRat(BigInt(1), BigInt(2 * k + 2)) * npow * nsq_inv)
                               .abs();
            if (bound < tail_limit) {
                ok = true;
                break;
            }
            npow = npow * nsq_inv;
        }
        if (!ok) continue;

        ArbReal h(Dw);
        for (long k = 1; k <= N; ++k) h = h + 1 / ArbReal(k, Dw);
        ArbReal acc = h - arb_ln(ArbReal(N, Dw), Dw) - ArbReal(BigRat(1, 2 * N), Dw);
        BigRat correction;
        for (const BigRat& t : terms) correction += t;
        return (acc + ArbReal(correction, Dw)).round_to(D);
    }
}

// Accelerated alternating series (P. Borwein's Chebyshev scheme), used for
// odd s >= 5 where neither the even-index formula nor the central-binomial
// series applies.
ArbReal zeta_borwein(long s, int D) {
    int Dw = D + 8;
    long n = static_cast<long>(D * 1.31) + 8;
    std::vector<BigInt> d(static_cast<std::size_t>(n) + 1);
    BigInt u(1);  // 4^i n (n+i-1)! / ((n-i)! (2i)!)
    d[0] = u;
    for (long i = 1; i <= n; ++i) {
        u = BigInt::div_exact(u * BigInt(4 * (n + i - 1)) * BigInt(n - i + 1),
                              BigInt(2 * i) * BigInt(2 * i - 1));
        d[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i - 1)] + u;
    }
    ArbReal sum(Dw);
    for (long k = 0; k < n; ++k) {
        BigInt num = d[static_cast<std::size_t>(k)] - d[static_cast<std::size_t>(n)];
        ArbReal term = ArbReal(num, Dw) /
                       ArbReal(BigInt::pow(BigInt(k + 1), static_cast<unsigned long>(s)), Dw);
        sum = (k % 2 == 0) ? sum + term : sum - term;
    }
    BigRat scale = BigRat(1) - BigRat(BigInt(1), BigInt::pow(BigInt(2), static_cast<unsigned long>(s - 1)));
    return (-sum / (ArbReal(d[static_cast<std::size_t>(n)], Dw) * ArbReal(scale, Dw))).round_to(D);
}

// sum_{k>=1} x^k / k^3, |x| <= 1/2
ArbReal li3_series(const BigRat& x, int D) {
    ArbReal z(x, D);
    if (z.is_zero()) return ArbReal(D);
    ArbReal sum(D);
    ArbReal pow = z;
    ArbReal eps = ArbReal::pow10(-D, 20);
    for (long k = 1;; ++k) {
        ArbReal term = pow / (static_cast<long>(k) * k * k);
        sum = sum + term;
        if (term.abs() < eps) break;
        pow = pow * z;
    }
    return sum;
}

ArbReal zeta_int(long s, int D) {
    if (s % 2 == 0) return zeta_even(s / 2, D).round_to(D);
    if (s == 3) return zeta3_value(D);
    return zeta_borwein(s, D);
}

ArbReal compute(const ConstantId& id, int P) {
    int D = P + kGuardDigits;
    switch (id.tag) {
        case ConstantId::Tag::Pi: return pi_value(D).round_to(P);
        case ConstantId::Tag::Ln2: return ln2_value(D).round_to(P);
        case ConstantId::Tag::Asinh1: return asinh1_value(D).round_to(P);
        case ConstantId::Tag::Catalan: return catalan_value(D).round_to(P);
        case ConstantId::Tag::EulerGamma: return euler_gamma_value(D).round_to(P);
        case ConstantId::Tag::ZetaInt: return zeta_int(id.s, D).round_to(P);
        case ConstantId::Tag::Li3:
            if (id.x == BigRat(1)) return zeta_int(3, D).round_to(P);
            return li3_series(id.x, D).round_to(P);
        case ConstantId::Tag::SeriesHuvent: return series_huvent(P);
        case ConstantId::Tag::SeriesCho: return series_cho(P);
    }
    throw UnsupportedConstantError("unsupported constant tag");
}

void validate(const ConstantId& id) {
    if (id.tag == ConstantId::Tag::ZetaInt && id.s < 2)
        throw UnsupportedConstantError("zeta requires an integer argument >= 2, got " +
                                       std::to_string(id.s));
    if (id.tag == ConstantId::Tag::Li3) {
        bool in_range = id.x.abs() <= BigRat(1, 2) || id.x == BigRat(1);
        if (!in_range)
            throw UnsupportedConstantError("li3 argument " + id.x.to_string() +
                                           " outside |x| <= 1/2 (or x = 1)");
    }
}

std::mutex g_cache_mutex;
std::map<std::string, ArbReal> g_cache;

}  // namespace

ArbReal eval_constant(const ConstantId& id, int P) {
    validate(id);
    std::string key = id.key();
    {
        std::lock_guard lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end() && it->second.precision() >= P)
            return it->second.round_to(P);
    }
    ArbReal value = compute(id, P);
    {
        std::lock_guard lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it == g_cache.end())
            g_cache.emplace(key, value);
        else if (it->second.precision() < P)
            it->second = value;
    }
    return value;
}

ArbReal zeta_even(long n, int P) {
    if (n < 1) throw DomainError("zeta_even: n must be >= 1, got " + std::to_string(n));
    int D = P + kGuardDigits;
    // (-1)^(n-1) 2^(2n-1) B_{2n} / (2n)!  exactly, then times pi^(2n).
    BigRat coeff = bernoulli(2 * n) *
                   BigRat(BigInt::pow(BigInt(2), static_cast<unsigned long>(2 * n - 1)),
                          BigInt::factorial(static_cast<unsigned long>(2 * n)));
    if (n % 2 == 0) coeff = -coeff;
    ArbReal pi_pow = arb_pow_int(pi_value(D), BigInt(2 * n), D);
    return (ArbReal(coeff, D) * pi_pow).round_to(P);
}

ArbReal series_huvent(int P) {
    int D = P + kGuardDigits;
    ArbReal sum(D);
    ArbReal eps = ArbReal::pow10(-D, 20);
    BigInt central(2);  // C(2k,k) from k = 1
    BigInt two_pow(2);  // 2^k
    for (long k = 1;; ++k) {
        ArbReal term = 1 / ArbReal(central * two_pow * BigInt(k) * BigInt(k) * BigInt(k), D);
        sum = (k % 2 == 1) ? sum + term : sum - term;
        if (term < eps) break;
        central = BigInt::div_exact(central * BigInt(2 * (2 * k + 1)), BigInt(k + 1));
        two_pow *= BigInt(2);
    }
    return sum.round_to(P);
}

ArbReal series_cho(int P) {
    int D = P + kGuardDigits;
    ArbReal sum(D);
    ArbReal eps = ArbReal::pow10(-D, 20);
    BigInt sixteen_pow(16);  // 16^k
    for (long k = 1;; ++k) {
        ArbReal term = zeta_even(k, D) / ArbReal(sixteen_pow * BigInt(k + 1), D);
        sum = sum + term;
        if (term < eps) break;
        sixteen_pow *= BigInt(16);
    }
    ArbReal pi = pi_value(D);
    return (pi * pi * sum).round_to(P);
}

}  // namespace relq
