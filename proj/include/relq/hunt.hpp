#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relq/pslq.hpp"
#include "relq/termlang.hpp"

namespace relq {

enum class OutputMode { Json, Text };

// One end-to-end search: evaluate [target, basis...], run PSLQ, solve the
// detected relation for the target, measure and classify the result.
struct HuntSpec {
    ParsedTerm target;
    std::vector<ParsedTerm> basis;  // the search basis, target excluded
    int digits = 24;
    PslqParams params;  // precision kept in sync with digits
    OutputMode output = OutputMode::Text;

    static HuntSpec with_defaults(ParsedTerm target, std::vector<ParsedTerm> basis, int digits);
};

struct HuntReport {
    PslqOutcome::Kind outcome = PslqOutcome::Kind::NoRelation;
    bool target_absent = false;  // relation exists among basis terms alone
    std::optional<IntegerRelation> relation;
    std::optional<ClosedForm> closed_form;
    std::optional<int> digit_acc;  // present iff closed_form present
    std::optional<ArbReal> confidence;
    ArbReal exclusion_bound;
    std::optional<SimplicityVerdict> simplicity;
    long iterations = 0;
    double wall_ms = 0.0;

    // input echo for reporting
    std::string target_text;
    std::vector<std::string> basis_texts;
    int digits = 0;
    ArbReal gamma;
    ArbReal eps;

    std::string outcome_name() const;
};

// Preconditions: digits >= 16, nonempty basis, target not syntactically
// identical to a basis term. Evaluation failures propagate with spans.
HuntReport hunt(const HuntSpec& spec);

// Exact rational rearrangement of rel (over [target, basis...]) into
// target = constant + sum coeff_i * term_i. Rational-literal basis terms
// fold into the constant; zero coefficients are dropped.
// Throws TargetAbsentError when the target's coefficient is zero.
ClosedForm solve_for_target(const IntegerRelation& rel, const ParsedTerm& target,
                            const std::vector<ParsedTerm>& basis);

// constant + sum c_i * term_i at precision P.
ArbReal evaluate_closed_form(const ClosedForm& cf, int P);

// Stable schema: {schema_version, target, basis, digits, gamma, eps,
// outcome, relation, confidence, exclusion_bound, closed_form,
// digit_accuracy, simplicity, iterations, wall_ms}. Deterministic for
// identical inputs apart from wall_ms.
nlohmann::ordered_json report_to_json(const HuntReport& report);
std::string report_to_text(const HuntReport& report);

// Structural self-check of a serialized report.
bool validate_report_json(const nlohmann::json& j);

// Decimal rendering used in reports: min(precision, 50) digits.
std::string report_number(const ArbReal& v);

}  // namespace relq
