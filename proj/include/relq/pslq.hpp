#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relq/arb.hpp"
#include "relq/bigint.hpp"

namespace relq {

struct PslqParams {
    ArbReal gamma;    // row-selection weight, must exceed 2/sqrt(3)
    ArbReal epsilon;  // detection threshold on the normalized y entries
    long max_iterations = 0;  // <= 0 means 10 n^3
    int precision = 0;        // input precision P, decimal digits
    std::optional<BigInt> max_coeff;  // cap on reported |a_i|

    // gamma = 2/sqrt(3) rounded up at P digits; epsilon = 10^-(P-5);
    // max_iterations resolved to 10 n^3 at run time.
    static PslqParams defaults(int precision);
};

// Iteration state. A and B are exact integer transforms with A*B = I at
// all times; y tracks xhat*B; H is the lower-trapezoidal matrix whose
// diagonal drives the exclusion bound. Confine one state to one task.
struct PslqState {
    int n = 0;
    int working_digits = 0;
    std::vector<ArbReal> x;     // original inputs
    std::vector<ArbReal> xhat;  // x / ||x||_2 at working precision
    std::vector<ArbReal> y;
    std::vector<std::vector<ArbReal>> H;  // n rows, n-1 columns
    std::vector<std::vector<BigInt>> A;
    std::vector<std::vector<BigInt>> B;
    long iteration = 0;
    int last_swap = -1;  // row index chosen by the most recent step
    ArbReal best_bound;
};

struct IntegerRelation {
    std::vector<BigInt> coefficients;  // primitive; first nonzero entry positive
    ArbReal residual;                  // |sum a_i x_i| over the raw inputs
    ArbReal confidence;                // min|y| / max|y| at detection
    long iterations = 0;
};

struct PslqOutcome {
    enum class Kind { RelationFound, NoRelation, PrecisionExhausted, IterationLimit };

    Kind kind = Kind::NoRelation;
    std::optional<IntegerRelation> relation;  // present iff RelationFound
    ArbReal bound;  // exclusion radius: every true relation has 2-norm >= bound
    long iterations = 0;

    static const char* kind_name(Kind k);
};

// Builds the scaled H matrix from x and runs one full Hermite reduction.
// Throws DimensionError (n < 2) or ZeroEntryError.
PslqState pslq_initialize(const std::vector<ArbReal>& x, const PslqParams& params);

// One PSLQ step: weighted-diagonal row swap, Givens rotation, Hermite
// reduction, bound update. Throws NumericBreakdown when the H diagonal
// falls below the working-precision floor.
void pslq_iterate(PslqState& state, const PslqParams& params);

// Runs until a y entry falls below epsilon, the exclusion bound passes
// max_coeff, the iteration budget runs out, or precision dies. Never
// throws for numeric reasons; the outcome carries the classification.
PslqOutcome pslq_run(const std::vector<ArbReal>& x, const PslqParams& params);

// Largest 1/max_j |H_jj| seen so far: no integer relation with Euclidean
// norm below this value exists among the inputs.
ArbReal exclusion_bound(const PslqState& state);

// Raw numeric mode: one decimal number per line, '#' comments and blank
// lines ignored.
std::vector<ArbReal> read_vector_file(const std::string& path, int digits);

}  // namespace relq
