#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "relq/constants.hpp"
#include "relq/pslq.hpp"
#include "relq/termlang.hpp"
#include "test_support.hpp"

using namespace relq;

namespace {

bool identity_product(const PslqState& st) {
    for (int i = 0; i < st.n; ++i) {
        for (int j = 0; j < st.n; ++j) {
            BigInt acc(0);
            for (int k = 0; k < st.n; ++k)
                acc += st.A[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                       st.B[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (!(acc == BigInt(i == j ? 1 : 0))) return false;
        }
    }
    return true;
}

ArbReal y_consistency_error(const PslqState& st) {
    ArbReal worst(st.working_digits);
    for (int j = 0; j < st.n; ++j) {
        ArbReal acc(st.working_digits);
        for (int i = 0; i < st.n; ++i)
            acc = acc + st.xhat[static_cast<size_t>(i)] *
                            ArbReal(st.B[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                    st.working_digits);
        ArbReal err = (st.y[static_cast<size_t>(j)] - acc).abs();
        if (err > worst) worst = err;
    }
    return worst;
}

bool hermite_condition(const PslqState& st, int last_swap) {
    // |H_ij| <= |H_jj|/2 for j <= min(i-1, last_swap+1), with a whisker of
    // rounding slack.
    ArbReal slack = ArbReal::pow10(-st.working_digits + 5, 20);
    for (int i = 1; i < st.n; ++i) {
        int jmax = i - 1 < last_swap + 1 ? i - 1 : last_swap + 1;
        for (int j = 0; j <= jmax && j < st.n - 1; ++j) {
            ArbReal lhs = st.H[static_cast<size_t>(i)][static_cast<size_t>(j)].abs();
            ArbReal rhs = st.H[static_cast<size_t>(j)][static_cast<size_t>(j)].abs() / 2 + slack;
            if (!(lhs <= rhs)) return false;
        }
    }
    return true;
}

std::vector<long> to_longs(const std::vector<BigInt>& v) {
    std::vector<long> out;
    for (const auto& c : v) out.push_back(c.to_long());
    return out;
}

}  // namespace

TEST_CASE("initialization on [1, 1]: hand-computed H, y, and B") {
    PslqParams params = PslqParams::defaults(30);
    PslqState st = pslq_initialize({ArbReal(1, 30), ArbReal(1, 30)}, params);

    // After the reduction pass y = [0, 1/sqrt(2)] and B's first column is
    // (1, -1): detection is immediate.
    CHECK(st.y[0].abs() < ArbReal::pow10(-35, 20));
    ArbReal inv_root2 = 1 / arb_sqrt(ArbReal(2, 40), 40);
    CHECK((st.y[1] - inv_root2).abs() < ArbReal::pow10(-35, 20));
    CHECK(st.B[0][0] == BigInt(1));
    CHECK(st.B[1][0] == BigInt(-1));
    CHECK(identity_product(st));
    CHECK(st.best_bound >= ArbReal(1, 20) - ArbReal::pow10(-10, 20));
}

TEST_CASE("dimension and zero-entry guards") {
    PslqParams params = PslqParams::defaults(30);
    CHECK_THROWS_AS(pslq_initialize({ArbReal(1, 30)}, params), DimensionError);
    try {
        pslq_initialize({ArbReal(1, 30), ArbReal(30), ArbReal(2, 30)}, params);
        FAIL("expected ZeroEntryError");
    } catch (const ZeroEntryError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("parameter invariants are enforced") {
    std::vector<ArbReal> x = {ArbReal(1, 30), ArbReal(2, 30)};
    PslqParams params = PslqParams::defaults(30);
    params.gamma = ArbReal(1, 30);  // below 2/sqrt(3)
    CHECK_THROWS_AS(pslq_initialize(x, params), DomainError);
    params = PslqParams::defaults(30);
    params.epsilon = ArbReal(2, 30);  // not in (0, 1)
    CHECK_THROWS_AS(pslq_initialize(x, params), DomainError);
    params = PslqParams::defaults(30);
    params.epsilon = ArbReal(30);  // zero
    CHECK_THROWS_AS(pslq_initialize(x, params), DomainError);
    // Inputs must carry at least the requested precision.
    CHECK_THROWS_AS(pslq_initialize({ArbReal(1, 20), ArbReal(2, 30)},
                                    PslqParams::defaults(30)),
                    DomainError);
    CHECK_NOTHROW(pslq_initialize(x, PslqParams::defaults(30)));
}

TEST_CASE("run on [1, 1] detects (1, -1) immediately") {
    PslqParams params = PslqParams::defaults(30);
    PslqOutcome out = pslq_run({ArbReal(1, 30), ArbReal(1, 30)}, params);
    REQUIRE(out.kind == PslqOutcome::Kind::RelationFound);
    CHECK(to_longs(out.relation->coefficients) == std::vector<long>{1, -1});
    CHECK(out.iterations == 0);
    // The true relation has norm sqrt(2); the bound must not exceed it.
    ArbReal root2 = arb_sqrt(ArbReal(2, 40), 40);
    CHECK(out.bound <= root2 + ArbReal::pow10(-10, 20));
    CHECK(out.relation->residual < ArbReal::pow10(-30, 20));
}

TEST_CASE("trilogarithm identity vector at 40 digits") {
    const int P = 40;
    std::vector<ArbReal> x = {
        eval_constant(ConstantId::li3(BigRat(1, 2)), P),
        eval_constant(ConstantId::zeta(3), P),
        evaluate(parse_term("pi^2*ln(2)"), P),
        evaluate(parse_term("ln(2)^3"), P),
    };
    PslqOutcome out = pslq_run(x, PslqParams::defaults(P));
    REQUIRE(out.kind == PslqOutcome::Kind::RelationFound);
    CHECK(to_longs(out.relation->coefficients) == std::vector<long>{24, -21, 2, -4});
}

TEST_CASE("the seven-element zeta(3) hunt detects in a recorded iteration count") {
    const int P = 24;
    std::vector<ArbReal> x = {
        eval_constant(ConstantId::zeta(3), P),
        ArbReal(1, P),
        evaluate(parse_term("pi^2*ln(2)"), P),
        evaluate(parse_term("pi*ln(2)^2"), P),
        evaluate(parse_term("ln(2)^3"), P),
        evaluate(parse_term("ln(1+sqrt(2))^3"), P),
        evaluate(parse_term("pi*catalan"), P),
    };
    PslqOutcome out = pslq_run(x, PslqParams::defaults(P));
    REQUIRE(out.kind == PslqOutcome::Kind::RelationFound);
    CHECK(out.iterations < 2000);
    // Regression value recorded from this implementation's first run.
    CHECK(out.iterations == 167);
}

TEST_CASE("A*B stays the identity and y stays consistent on random instances") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> dims(3, 6);
    std::uniform_int_distribution<int> digit(0, 9);
    const int P = 30;
    ArbReal tol = ArbReal::pow10(3 - P, 20);
    for (int inst = 0; inst < 20; ++inst) {
        int n = dims(rng);
        std::vector<ArbReal> x;
        for (int i = 0; i < n; ++i) {
            std::string s = std::to_string(1 + digit(rng)) + ".";
            for (int d = 0; d < 32; ++d) s += static_cast<char>('0' + digit(rng));
            x.push_back(ArbReal::parse(s, P));
        }
        PslqParams params = PslqParams::defaults(P);
        PslqState st = pslq_initialize(x, params);
        REQUIRE(identity_product(st));
        REQUIRE(hermite_condition(st, st.n));  // full condition after init
        for (int step = 0; step < 40; ++step) {
            bool low = false;
            for (int i = 0; i < st.n; ++i)
                if (st.y[static_cast<size_t>(i)].abs() < params.epsilon) low = true;
            if (low) break;
            try {
                pslq_iterate(st, params);
            } catch (const NumericBreakdown&) {
                break;
            }
            REQUIRE(identity_product(st));
            REQUIRE(y_consistency_error(st) < tol);
            REQUIRE(hermite_condition(st, st.last_swap));
        }
    }
}

TEST_CASE("planted relations are recovered exactly with a sound bound") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> dims(4, 6);
    const int P = 40;
    int recovered = 0;
    PslqParams params = PslqParams::defaults(P);
    for (int inst = 0; inst < 50; ++inst) {
        test::PlantedInstance plant = test::make_planted(rng, dims(rng), P);
        PslqOutcome out = pslq_run(plant.x, params);
        REQUIRE(out.kind == PslqOutcome::Kind::RelationFound);
        bool exact = out.relation->coefficients.size() == plant.relation.size();
        for (std::size_t i = 0; exact && i < plant.relation.size(); ++i)
            exact = out.relation->coefficients[i] == plant.relation[i];
        if (exact) ++recovered;

        // Exclusion bound never exceeds the norm of the known relation.
        ArbReal norm_sq(20);
        for (const auto& c : plant.relation)
            norm_sq = norm_sq + ArbReal(c * c, 40);
        ArbReal norm = arb_sqrt(norm_sq, 40);
        CHECK(out.bound <= norm * (ArbReal(1, 20) + ArbReal::pow10(-10, 20)));

        // Soundness: the reported residual, recomputed from the raw inputs,
        // stays below n * eps * ||x||.
        ArbReal x_norm_sq(50);
        for (const auto& v : plant.x) x_norm_sq = x_norm_sq + v * v;
        ArbReal budget = params.epsilon *
                         static_cast<long>(plant.x.size()) * arb_sqrt(x_norm_sq, 50);
        CHECK(out.relation->residual < budget);
    }
    CHECK(recovered == 50);
}

TEST_CASE("exclusion bound starts at 1 or higher") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> digit(0, 9);
    for (int inst = 0; inst < 10; ++inst) {
        std::vector<ArbReal> x;
        for (int i = 0; i < 3; ++i) {
            std::string s = std::to_string(1 + digit(rng)) + ".";
            for (int d = 0; d < 30; ++d) s += static_cast<char>('0' + digit(rng));
            x.push_back(ArbReal::parse(s, 30));
        }
        PslqState st = pslq_initialize(x, PslqParams::defaults(30));
        CHECK(exclusion_bound(st) >= ArbReal(1, 20) - ArbReal::pow10(-20, 20));
    }
}

TEST_CASE("iteration budget is honored") {
    const int P = 30;
    std::vector<ArbReal> x = {eval_constant(ConstantId::zeta(3), P),
                              evaluate(parse_term("pi^3"), P)};
    PslqParams params = PslqParams::defaults(P);
    params.max_iterations = 3;
    PslqOutcome out = pslq_run(x, params);
    CHECK(out.kind == PslqOutcome::Kind::IterationLimit);
    CHECK(out.iterations == 3);
    CHECK(out.bound >= ArbReal(1, 20));
}

TEST_CASE("max_coeff turns oversized detections into NoRelation") {
    PslqParams params = PslqParams::defaults(30);
    params.max_coeff = BigInt(2);
    PslqOutcome out = pslq_run({ArbReal(5, 30), ArbReal(1, 30)}, params);
    CHECK(out.kind == PslqOutcome::Kind::NoRelation);
}

TEST_CASE("precision exhaustion is reported, not thrown") {
    // No small relation, epsilon far below what 30 digits can support.
    const int P = 30;
    std::vector<ArbReal> x = {ArbReal(1, P),
                              ArbReal(1, P) + ArbReal::pow10(-20, P).round_to(P)};
    PslqParams params = PslqParams::defaults(P);
    params.epsilon = ArbReal::pow10(-28, P);
    PslqOutcome out = pslq_run(x, params);
    CHECK((out.kind == PslqOutcome::Kind::PrecisionExhausted ||
           out.kind == PslqOutcome::Kind::IterationLimit));
    CHECK(out.bound > ArbReal(1000, 20));
}

TEST_CASE("raw vector files parse with comments and blanks") {
    std::string path = "pslq_vector_test.txt";
    {
        std::ofstream f(path);
        f << "# two entries\n\n1.25\n-3.5e-2\n";
    }
    std::vector<ArbReal> v = read_vector_file(path, 20);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == ArbReal(BigRat(5, 4), 20));
    CHECK(v[1] == ArbReal(BigRat(-7, 200), 20));
    std::remove(path.c_str());

    {
        std::ofstream f(path);
        f << "1.25\nnot-a-number\n";
    }
    CHECK_THROWS_AS(read_vector_file(path, 20), Error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_vector_file("/nonexistent/vector.txt", 20), Error);
}
