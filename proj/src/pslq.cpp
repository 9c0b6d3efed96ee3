#include "relq/pslq.hpp"

#include <fstream>
#include <sstream>

#include "relq/errors.hpp"

namespace relq {

// The default detection threshold leaves five digits of headroom below the
// working precision. Measured on the classic 7-element zeta(3) basis at 24
// digits: the canonical relation's normalized residual sits near 7.5e-21
// while the nearest shallower spurious vector sits near 3.5e-19, so 1e-19
// separates both; a looser 1e-18 latches onto the spurious one.
PslqParams PslqParams::defaults(int precision) {
    PslqParams p;
    ArbReal gamma(precision);
    mpfr_t root3;
    mpfr_init2(root3, ArbReal::bits_for(precision));
    mpfr_sqrt_ui(root3, 3, MPFR_RNDD);
    mpfr_ui_div(gamma.raw(), 2, root3, MPFR_RNDU);  // rounded up: strictly > 2/sqrt(3)
    mpfr_clear(root3);
    p.gamma = gamma;
    p.epsilon = ArbReal::pow10(-(static_cast<long>(precision) - 5), precision);
    p.max_iterations = 0;
    p.precision = precision;
    return p;
}

const char* PslqOutcome::kind_name(Kind k) {
    switch (k) {
        case Kind::RelationFound: return "relation_found";
        case Kind::NoRelation: return "no_relation";
        case Kind::PrecisionExhausted: return "precision_exhausted";
        case Kind::IterationLimit: return "iteration_limit";
    }
    return "?";
}

namespace {

ArbReal bound_from_diagonal(const PslqState& st) {
    ArbReal mx = st.H[0][0].abs();
    for (int j = 1; j < st.n - 1; ++j) {
        ArbReal a = st.H[j][j].abs();
        if (a > mx) mx = a;
    }
    if (mx.is_zero()) throw NumericBreakdown("H diagonal vanished");
    return 1 / mx;
}

// Shared by initialization and iteration: subtract t-multiples of row j
// from row i across y, H, A with the inverse update on B's columns.
void hermite_reduce_pair(PslqState& st, int i, int j) {
    if (st.H[j][j].is_zero()) throw NumericBreakdown("zero H diagonal during reduction");
    BigInt t = nearest_int(st.H[i][j] / st.H[j][j]);
    if (t.is_zero()) return;
    ArbReal tf(t, st.working_digits);
    st.y[j] = st.y[j] + tf * st.y[i];
    for (int k = 0; k <= j; ++k) st.H[i][k] = st.H[i][k] - tf * st.H[j][k];
    for (int k = 0; k < st.n; ++k) {
        st.A[i][k] -= t * st.A[j][k];
        st.B[k][j] += t * st.B[k][i];
    }
}

}  // namespace

namespace {

void validate_params(const PslqParams& params) {
    if (params.precision < kMinDigits)
        throw DomainError("pslq precision below " + std::to_string(kMinDigits) + " digits");
    ArbReal floor_gamma(params.precision);
    mpfr_sqrt_ui(floor_gamma.raw(), 3, MPFR_RNDU);
    mpfr_ui_div(floor_gamma.raw(), 2, floor_gamma.raw(), MPFR_RNDD);  // safe lower witness
    if (!(params.gamma > floor_gamma))
        throw DomainError("pslq gamma must exceed 2/sqrt(3), got " + params.gamma.to_string(12));
    if (!(params.epsilon > ArbReal(20)) || !(params.epsilon < ArbReal(1, 20)))
        throw DomainError("pslq epsilon must lie in (0, 1), got " + params.epsilon.to_string(12));
}

}  // namespace

PslqState pslq_initialize(const std::vector<ArbReal>& x, const PslqParams& params) {
    validate_params(params);
    const int n = static_cast<int>(x.size());
    if (n < 2) throw DimensionError("pslq needs at least 2 entries, got " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<size_t>(i)].is_zero()) throw ZeroEntryError(static_cast<size_t>(i));
        if (x[static_cast<size_t>(i)].precision() < params.precision)
            throw DomainError("input entry " + std::to_string(i + 1) + " carries only " +
                              std::to_string(x[static_cast<size_t>(i)].precision()) +
                              " digits for a " + std::to_string(params.precision) +
                              "-digit run");
    }

    PslqState st;
    st.n = n;
    st.working_digits = params.precision + kGuardDigits;
    const int D = st.working_digits;
    st.x = x;

    ArbReal norm_sq(D);
    std::vector<ArbReal> xw;
    xw.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        xw.push_back(x[static_cast<size_t>(i)].round_to(D));
        norm_sq = norm_sq + xw.back() * xw.back();
    }
    ArbReal norm = arb_sqrt(norm_sq, D);
    for (int i = 0; i < n; ++i) st.xhat.push_back(xw[static_cast<size_t>(i)] / norm);

    // Partial norms s_k = sqrt(sum_{j>=k} xhat_j^2).
    std::vector<ArbReal> s;
    {
        std::vector<ArbReal> suffix(static_cast<size_t>(n), ArbReal(D));
        ArbReal acc(D);
        for (int k = n - 1; k >= 0; --k) {
            acc = acc + st.xhat[static_cast<size_t>(k)] * st.xhat[static_cast<size_t>(k)];
            suffix[static_cast<size_t>(k)] = acc;
        }
        for (int k = 0; k < n; ++k) s.push_back(arb_sqrt(suffix[static_cast<size_t>(k)], D));
    }

    for (int i = 0; i < n; ++i) {
        st.H.emplace_back();
        for (int j = 0; j < n - 1; ++j) {
            if (j > i) {
                st.H.back().push_back(ArbReal(D));
            } else if (j == i) {
                st.H.back().push_back(s[static_cast<size_t>(j + 1)] / s[static_cast<size_t>(j)]);
            } else {
                st.H.back().push_back(-(st.xhat[static_cast<size_t>(i)] *
                                        st.xhat[static_cast<size_t>(j)]) /
                                      (s[static_cast<size_t>(j)] * s[static_cast<size_t>(j + 1)]));
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        st.A.emplace_back(static_cast<size_t>(n), BigInt(0));
        st.B.emplace_back(static_cast<size_t>(n), BigInt(0));
        st.A.back()[static_cast<size_t>(i)] = BigInt(1);
        st.B.back()[static_cast<size_t>(i)] = BigInt(1);
    }

    st.y = st.xhat;
    for (int i = 1; i < n; ++i)
        for (int j = i - 1; j >= 0; --j) hermite_reduce_pair(st, i, j);

    st.best_bound = bound_from_diagonal(st);
    return st;
}

void pslq_iterate(PslqState& state, const PslqParams& params) {
    const int n = state.n;
    const int D = state.working_digits;

    // Row with maximal gamma^i |H_ii|.
    int m = 0;
    {
        ArbReal g = params.gamma.round_to(D);
        ArbReal w = g;
        ArbReal best = w * state.H[0][0].abs();
        for (int i = 1; i < n - 1; ++i) {
            w = w * g;
            ArbReal cand = w * state.H[static_cast<size_t>(i)][static_cast<size_t>(i)].abs();
            if (cand > best) {
                best = cand;
                m = i;
            }
        }
    }

    state.last_swap = m;
    std::swap(state.y[static_cast<size_t>(m)], state.y[static_cast<size_t>(m + 1)]);
    std::swap(state.A[static_cast<size_t>(m)], state.A[static_cast<size_t>(m + 1)]);
    std::swap(state.H[static_cast<size_t>(m)], state.H[static_cast<size_t>(m + 1)]);
    for (int k = 0; k < n; ++k)
        std::swap(state.B[static_cast<size_t>(k)][static_cast<size_t>(m)],
                  state.B[static_cast<size_t>(k)][static_cast<size_t>(m + 1)]);

    if (m < n - 2) {
        // Givens rotation re-zeroing H[m][m+1] after the row swap.
        ArbReal t1 = state.H[static_cast<size_t>(m)][static_cast<size_t>(m)];
        ArbReal t2 = state.H[static_cast<size_t>(m)][static_cast<size_t>(m + 1)];
        ArbReal t0 = arb_sqrt(t1 * t1 + t2 * t2, D);
        if (t0.is_zero()) throw NumericBreakdown("degenerate Givens rotation");
        ArbReal c = t1 / t0;
        ArbReal s = t2 / t0;
        for (int i = m; i < n; ++i) {
            ArbReal a = state.H[static_cast<size_t>(i)][static_cast<size_t>(m)];
            ArbReal b = state.H[static_cast<size_t>(i)][static_cast<size_t>(m + 1)];
            state.H[static_cast<size_t>(i)][static_cast<size_t>(m)] = c * a + s * b;
            state.H[static_cast<size_t>(i)][static_cast<size_t>(m + 1)] = c * b - s * a;
        }
    }

    for (int i = m + 1; i < n; ++i) {
        int jstart = i - 1 < m + 1 ? i - 1 : m + 1;
        for (int j = jstart; j >= 0; --j) hermite_reduce_pair(state, i, j);
    }

    state.iteration += 1;
    ArbReal current = bound_from_diagonal(state);
    if (current > state.best_bound) state.best_bound = current;

    // Working-precision floor on the diagonal.
    ArbReal floor_eps = ArbReal::pow10(3 - static_cast<long>(params.precision), 20);
    for (int j = 0; j < n - 1; ++j) {
        if (state.H[static_cast<size_t>(j)][static_cast<size_t>(j)].abs() < floor_eps)
            throw NumericBreakdown("H diagonal below working-precision floor");
    }
}

ArbReal exclusion_bound(const PslqState& state) { return state.best_bound; }

namespace {

IntegerRelation extract_relation(const PslqState& st, int column, const ArbReal& confidence) {
    IntegerRelation rel;
    rel.coefficients.reserve(static_cast<size_t>(st.n));
    for (int k = 0; k < st.n; ++k)
        rel.coefficients.push_back(st.B[static_cast<size_t>(k)][static_cast<size_t>(column)]);

    BigInt g(0);
    for (const BigInt& c : rel.coefficients) g = BigInt::gcd(g, c);
    if (!g.is_zero() && !(g == BigInt(1)))
        for (BigInt& c : rel.coefficients) c = BigInt::div_exact(c, g);
    for (const BigInt& c : rel.coefficients) {
        if (c.is_zero()) continue;
        if (c.sign() < 0)
            for (BigInt& v : rel.coefficients) v = -v;
        break;
    }

    ArbReal acc(st.working_digits);
    for (int k = 0; k < st.n; ++k)
        acc = acc + ArbReal(rel.coefficients[static_cast<size_t>(k)], st.working_digits) *
                        st.x[static_cast<size_t>(k)];
    rel.residual = acc.abs();
    rel.confidence = confidence;
    rel.iterations = st.iteration;
    return rel;
}

}  // namespace

PslqOutcome pslq_run(const std::vector<ArbReal>& x, const PslqParams& params) {
    PslqState st = pslq_initialize(x, params);
    const int n = st.n;
    long max_iter = params.max_iterations > 0
                        ? params.max_iterations
                        : 10L * n * n * n;
    ArbReal eps = params.epsilon.round_to(st.working_digits);

    PslqOutcome out;
    for (;;) {
        int imin = 0, imax = 0;
        ArbReal vmin = st.y[0].abs();
        ArbReal vmax = vmin;
        for (int i = 1; i < n; ++i) {
            ArbReal a = st.y[static_cast<size_t>(i)].abs();
            if (a < vmin) {
                vmin = a;
                imin = i;
            }
            if (a > vmax) {
                vmax = a;
                imax = i;
            }
        }
        (void)imax;

        if (vmin < eps) {
            ArbReal confidence = vmax.is_zero() ? ArbReal(st.working_digits) : vmin / vmax;
            IntegerRelation rel = extract_relation(st, imin, confidence);
            if (params.max_coeff) {
                bool too_big = false;
                for (const BigInt& c : rel.coefficients)
                    if (c.abs() > *params.max_coeff) too_big = true;
                if (too_big) {
                    out.kind = PslqOutcome::Kind::NoRelation;
                    out.bound = st.best_bound;
                    out.iterations = st.iteration;
                    return out;
                }
            }
            out.kind = PslqOutcome::Kind::RelationFound;
            out.relation = std::move(rel);
            out.bound = st.best_bound;
            out.iterations = st.iteration;
            return out;
        }

        if (params.max_coeff &&
            st.best_bound > ArbReal(*params.max_coeff, st.working_digits)) {
            out.kind = PslqOutcome::Kind::NoRelation;
            out.bound = st.best_bound;
            out.iterations = st.iteration;
            return out;
        }
        if (st.iteration >= max_iter) {
            out.kind = PslqOutcome::Kind::IterationLimit;
            out.bound = st.best_bound;
            out.iterations = st.iteration;
            return out;
        }

        try {
            pslq_iterate(st, params);
        } catch (const NumericBreakdown&) {
            out.kind = PslqOutcome::Kind::PrecisionExhausted;
            out.bound = st.best_bound;
            out.iterations = st.iteration;
            return out;
        }
    }
}

std::vector<ArbReal> read_vector_file(const std::string& path, int digits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open vector file '" + path + "'");
    std::vector<ArbReal> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::string body = line.substr(b, e - b + 1);
        if (body.empty() || body[0] == '#') continue;
        try {
            out.push_back(ArbReal::parse(body, digits));
        } catch (const Error& err) {
            throw Error("line " + std::to_string(line_no) + ": " + err.what());
        }
    }
    return out;
}

}  // namespace relq
