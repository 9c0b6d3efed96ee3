#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "relq/arb.hpp"
#include "relq/bigint.hpp"
#include "relq/errors.hpp"

namespace relq {

enum class ConstName { Pi, Gamma, Catalan };
enum class FuncName { Ln, Sqrt, Exp, Zeta, Li3 };

class TermExpr;
using TermPtr = std::shared_ptr<const TermExpr>;

// Abstract syntax of one basis term. Immutable; share freely.
//
// Grammar (names case-insensitive, whitespace insignificant, implicit
// multiplication rejected, unary minus at expression head only):
//   expr   := ['-'] term { ('+'|'-') term }
//   term   := factor { '*' factor }
//   factor := base [ '^' factor ]
//   base   := INTEGER [ '/' INTEGER ] | NAME [ '(' expr ')' ] | '(' expr ')'
class TermExpr {
public:
    struct Rational {
        BigRat value;
    };
    struct Constant {
        ConstName name;
    };
    struct Call {
        FuncName fn;
        TermPtr arg;
    };
    struct Pow {
        TermPtr base;
        TermPtr exponent;  // usually a Rational; any positive real works
    };
    struct Product {
        std::vector<TermPtr> factors;
    };
    struct Sum {
        std::vector<std::pair<int, TermPtr>> addends;  // sign is +1 or -1
    };

    using Node = std::variant<Rational, Constant, Call, Pow, Product, Sum>;

    TermExpr(Node node, SourceSpan span) : node(std::move(node)), span(span) {}

    Node node;
    SourceSpan span;
};

TermPtr make_rational(BigRat v, SourceSpan span = {});
TermPtr make_constant(ConstName name, SourceSpan span = {});
TermPtr make_call(FuncName fn, TermPtr arg, SourceSpan span = {});
TermPtr make_pow(TermPtr base, TermPtr exponent, SourceSpan span = {});
TermPtr make_product(std::vector<TermPtr> factors, SourceSpan span = {});
TermPtr make_sum(std::vector<std::pair<int, TermPtr>> addends, SourceSpan span = {});

// Total over the grammar above; everything else raises SyntaxError (with a
// 1-based byte offset and what was expected) or UnknownNameError.
TermPtr parse_term(std::string_view src);

// Value correct to 10^(2-P) relative error. Domain violations raise
// DomainError carrying the offending subexpression's span.
ArbReal evaluate(const TermExpr& e, int P);
inline ArbReal evaluate(const TermPtr& e, int P) { return evaluate(*e, P); }

// Exact rational value of a literal subtree (rationals, sums, products,
// integer powers); nullopt if the subtree involves a constant or function.
std::optional<BigRat> fold_rational(const TermExpr& e);

// Boros-Moll weight: pi, gamma, ln(algebraic) weigh 1, catalan 2, zeta(k)
// weighs k, li3 weighs 3, algebraic factors 0; additive over products,
// multiplied by integer exponents. nullopt outside that fragment.
std::optional<long> weight(const TermExpr& e);
inline std::optional<long> weight(const TermPtr& e) { return weight(*e); }

// Canonical re-parseable rendering.
std::string format_term(const TermExpr& e);
inline std::string format_term(const TermPtr& e) { return format_term(*e); }

// A target expressed as constant + sum of rational multiples of basis terms.
struct ClosedFormTerm {
    BigRat coefficient;  // never zero
    TermPtr term;
    std::string text;  // source text of the term, used for rendering
};

struct ClosedForm {
    TermPtr target;
    std::string target_text;
    BigRat constant_term;
    std::vector<ClosedFormTerm> terms;
};

// "c0 + c1*t1 - c2*t2 ..." with exact rational coefficients; parses back
// to an expression with the same value. The all-zero form renders "0".
std::string format_closed_form(const ClosedForm& cf);

struct SimplicityVerdict {
    bool is_simple = false;
    long term_count = 0;
    BigInt max_abs_integer;
};

// is_simple iff fewer than 10 terms and every integer appearing in the
// form (coefficient numerators/denominators and literals inside the basis
// terms) stays below 500 in absolute value.
SimplicityVerdict classify_simplicity(const ClosedForm& cf);

// Basis file: one expression per line, '#' comments and blank lines
// ignored, optional leading "target: <expr>" line.
struct ParsedTerm {
    std::string text;
    TermPtr expr;
};

struct BasisFile {
    std::optional<ParsedTerm> target;
    std::vector<ParsedTerm> terms;
};

BasisFile parse_basis_text(std::string_view content);
BasisFile load_basis_file(const std::string& path);

}  // namespace relq
