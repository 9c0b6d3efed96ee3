#include "relq/hunt.hpp"

#include <chrono>

#include "relq/constants.hpp"

namespace relq {

HuntSpec HuntSpec::with_defaults(ParsedTerm target, std::vector<ParsedTerm> basis, int digits) {
    HuntSpec s;
    s.target = std::move(target);
    s.basis = std::move(basis);
    s.digits = digits;
    s.params = PslqParams::defaults(digits);
    return s;
}

std::string HuntReport::outcome_name() const {
    if (outcome == PslqOutcome::Kind::RelationFound && target_absent)
        return "relation_found_target_absent";
    return PslqOutcome::kind_name(outcome);
}

ClosedForm solve_for_target(const IntegerRelation& rel, const ParsedTerm& target,
                            const std::vector<ParsedTerm>& basis) {
    if (rel.coefficients.size() != basis.size() + 1)
        throw DimensionError("relation has " + std::to_string(rel.coefficients.size()) +
                             " coefficients for " + std::to_string(basis.size() + 1) +
                             " vector entries");
    const BigInt& a1 = rel.coefficients[0];
    if (a1.is_zero())
        throw TargetAbsentError("relation does not involve the target (first coefficient zero)");

    ClosedForm cf;
    cf.target = target.expr;
    cf.target_text = target.text;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        BigRat c(-rel.coefficients[i + 1], a1);
        if (c.is_zero()) continue;
        if (auto folded = fold_rational(*basis[i].expr)) {
            cf.constant_term += c * *folded;
        } else {
            cf.terms.push_back(ClosedFormTerm{c, basis[i].expr, basis[i].text});
        }
    }
    return cf;
}

ArbReal evaluate_closed_form(const ClosedForm& cf, int P) {
    int D = P + kGuardDigits;
    ArbReal acc(cf.constant_term, D);
    for (const auto& t : cf.terms)
        acc = acc + ArbReal(t.coefficient, D) * evaluate(*t.term, D);
    return acc.round_to(P);
}

HuntReport hunt(const HuntSpec& spec) {
    if (spec.digits < 16)
        throw DomainError("hunt requires at least 16 digits, got " + std::to_string(spec.digits));
    if (spec.basis.empty()) throw DimensionError("hunt basis is empty");
    std::string target_printed = format_term(spec.target.expr);
    for (const auto& b : spec.basis)
        if (format_term(b.expr) == target_printed)
            throw DomainError("target is syntactically identical to basis term '" + b.text + "'");

    PslqParams params = spec.params;
    params.precision = spec.digits;

    HuntReport rep;
    rep.target_text = spec.target.text;
    for (const auto& b : spec.basis) rep.basis_texts.push_back(b.text);
    rep.digits = spec.digits;
    rep.gamma = params.gamma;
    rep.eps = params.epsilon;

    auto t0 = std::chrono::steady_clock::now();

    std::vector<ArbReal> x;
    x.reserve(spec.basis.size() + 1);
    x.push_back(evaluate(*spec.target.expr, spec.digits));
    for (const auto& b : spec.basis) x.push_back(evaluate(*b.expr, spec.digits));

    PslqOutcome out = pslq_run(x, params);
    rep.outcome = out.kind;
    rep.exclusion_bound = out.bound;
    rep.iterations = out.iterations;

    if (out.kind == PslqOutcome::Kind::RelationFound) {
        rep.relation = out.relation;
        rep.confidence = out.relation->confidence;
        if (out.relation->coefficients[0].is_zero()) {
            rep.target_absent = true;
        } else {
            ClosedForm cf = solve_for_target(*out.relation, spec.target, spec.basis);
            int ref_digits = (3 * spec.digits + 1) / 2;  // ceil(1.5 P)
            ArbReal approx = evaluate_closed_form(cf, ref_digits);
            ArbReal reference = evaluate(*spec.target.expr, ref_digits);
            rep.digit_acc = digit_accuracy(approx, reference);
            rep.simplicity = classify_simplicity(cf);
            rep.closed_form = std::move(cf);
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Reports

std::string report_number(const ArbReal& v) {
    int k = v.precision() < 50 ? v.precision() : 50;
    return v.to_string(k);
}

namespace {

nlohmann::ordered_json rational_json(const BigRat& r) {
    return {{"num", r.numerator().to_string()}, {"den", r.denominator().to_string()}};
}

}  // namespace

nlohmann::ordered_json report_to_json(const HuntReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["target"] = rep.target_text;
    j["basis"] = rep.basis_texts;
    j["digits"] = rep.digits;
    j["gamma"] = report_number(rep.gamma);
    j["eps"] = report_number(rep.eps);
    j["outcome"] = rep.outcome_name();
    if (rep.relation) {
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (const BigInt& c : rep.relation->coefficients) coeffs.push_back(c.to_string());
        j["relation"] = coeffs;
    } else {
        j["relation"] = nullptr;
    }
    j["confidence"] = rep.confidence ? nlohmann::ordered_json(report_number(*rep.confidence))
                                     : nlohmann::ordered_json(nullptr);
    j["exclusion_bound"] = report_number(rep.exclusion_bound);
    if (rep.closed_form) {
        nlohmann::ordered_json cf;
        cf["constant"] = rational_json(rep.closed_form->constant_term);
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& t : rep.closed_form->terms) {
            nlohmann::ordered_json e = rational_json(t.coefficient);
            e["term"] = t.text.empty() ? format_term(t.term) : t.text;
            terms.push_back(e);
        }
        cf["terms"] = terms;
        j["closed_form"] = cf;
    } else {
        j["closed_form"] = nullptr;
    }
    j["digit_accuracy"] = rep.digit_acc ? nlohmann::ordered_json(*rep.digit_acc)
                                        : nlohmann::ordered_json(nullptr);
    if (rep.simplicity) {
        j["simplicity"] = {{"is_simple", rep.simplicity->is_simple},
                           {"term_count", rep.simplicity->term_count},
                           {"max_abs_integer", rep.simplicity->max_abs_integer.to_string()}};
    } else {
        j["simplicity"] = nullptr;
    }
    j["iterations"] = rep.iterations;
    j["wall_ms"] = rep.wall_ms;
    return j;
}

std::string report_to_text(const HuntReport& rep) {
    std::string out;
    out += "target:          " + rep.target_text + "\n";
    out += "digits:          " + std::to_string(rep.digits) + "\n";
    out += "outcome:         " + rep.outcome_name() + "\n";
    if (rep.relation) {
        out += "relation:        [";
        for (std::size_t i = 0; i < rep.relation->coefficients.size(); ++i) {
            if (i) out += ", ";
            out += rep.relation->coefficients[i].to_string();
        }
        out += "]\n";
        out += "residual:        " + rep.relation->residual.to_string(10) + "\n";
    }
    if (rep.confidence) out += "confidence:      " + rep.confidence->to_string(10) + "\n";
    out += "exclusion bound: " + rep.exclusion_bound.to_string(10) + "\n";
    if (rep.closed_form)
        out += "closed form:     " + rep.target_text + " = " + format_closed_form(*rep.closed_form) + "\n";
    if (rep.digit_acc) out += "digit accuracy:  " + std::to_string(*rep.digit_acc) + "\n";
    if (rep.simplicity) {
        out += "simplicity:      ";
        out += rep.simplicity->is_simple ? "simple" : "not simple";
        out += " (" + std::to_string(rep.simplicity->term_count) + " terms, max integer " +
               rep.simplicity->max_abs_integer.to_string() + ")\n";
    }
    out += "iterations:      " + std::to_string(rep.iterations) + "\n";
    out += "wall time:       " + std::to_string(rep.wall_ms) + " ms\n";
    return out;
}

bool validate_report_json(const nlohmann::json& j) {
    auto has = [&j](const char* key) { return j.contains(key); };
    if (!j.is_object()) return false;
    for (const char* key :
         {"schema_version", "target", "basis", "digits", "gamma", "eps", "outcome", "relation",
          "confidence", "exclusion_bound", "closed_form", "digit_accuracy", "simplicity",
          "iterations", "wall_ms"})
        if (!has(key)) return false;
    if (!j["schema_version"].is_number_integer()) return false;
    if (!j["target"].is_string() || !j["basis"].is_array()) return false;
    if (!j["digits"].is_number_integer()) return false;
    if (!j["gamma"].is_string() || !j["eps"].is_string()) return false;
    if (!j["outcome"].is_string()) return false;
    if (!j["relation"].is_null()) {
        if (!j["relation"].is_array()) return false;
        for (const auto& c : j["relation"])
            if (!c.is_string()) return false;
    }
    if (!j["confidence"].is_null() && !j["confidence"].is_string()) return false;
    if (!j["exclusion_bound"].is_string()) return false;
    if (!j["closed_form"].is_null()) {
        const auto& cf = j["closed_form"];
        if (!cf.is_object() || !cf.contains("constant") || !cf.contains("terms")) return false;
        const auto& c = cf["constant"];
        if (!c.is_object() || !c.contains("num") || !c.contains("den")) return false;
        if (!cf["terms"].is_array()) return false;
        for (const auto& t : cf["terms"]) {
            if (!t.is_object() || !t.contains("num") || !t.contains("den") || !t.contains("term"))
                return false;
        }
    }
    if (!j["digit_accuracy"].is_null() && !j["digit_accuracy"].is_number_integer()) return false;
    if (!j["simplicity"].is_null()) {
        const auto& s = j["simplicity"];
        if (!s.is_object() || !s.contains("is_simple") || !s.contains("term_count") ||
            !s.contains("max_abs_integer"))
            return false;
    }
    if (!j["iterations"].is_number_integer()) return false;
    if (!j["wall_ms"].is_number()) return false;
    return true;
}

}  // namespace relq
