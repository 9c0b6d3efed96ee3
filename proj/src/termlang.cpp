#include "relq/termlang.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "relq/constants.hpp"

namespace relq {

TermPtr make_rational(BigRat v, SourceSpan span) {
    return std::make_shared<TermExpr>(TermExpr::Rational{std::move(v)}, span);
}
TermPtr make_constant(ConstName name, SourceSpan span) {
    return std::make_shared<TermExpr>(TermExpr::Constant{name}, span);
}
TermPtr make_call(FuncName fn, TermPtr arg, SourceSpan span) {
    return std::make_shared<TermExpr>(TermExpr::Call{fn, std::move(arg)}, span);
}
TermPtr make_pow(TermPtr base, TermPtr exponent, SourceSpan span) {
    return std::make_shared<TermExpr>(TermExpr::Pow{std::move(base), std::move(exponent)}, span);
}
TermPtr make_product(std::vector<TermPtr> factors, SourceSpan span) {
    return std::make_shared<TermExpr>(TermExpr::Product{std::move(factors)}, span);
}
TermPtr make_sum(std::vector<std::pair<int, TermPtr>> addends, SourceSpan span) {
    return std::make_shared<TermExpr>(TermExpr::Sum{std::move(addends)}, span);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what, const std::string& expected) {
        skip_ws();
        throw SyntaxError(what, pos + 1, expected);
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& expected) {
        if (!eat(c)) {
            std::string got = at_end() ? "unexpected end of input"
                                       : std::string("unexpected '") + src[pos] + "'";
            fail(got, expected);
        }
    }

    BigInt integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) fail("expected digits", "an integer");
        return BigInt(std::string(src.substr(start, pos - start)));
    }

    std::string name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string raw(src.substr(start, pos - start));
        for (char& c : raw) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return raw;
    }

    TermPtr expr() {
        skip_ws();
        std::size_t start = pos;
        std::vector<std::pair<int, TermPtr>> addends;
        int sign = eat('-') ? -1 : 1;
        addends.emplace_back(sign, term());
        for (;;) {
            if (eat('+'))
                addends.emplace_back(1, term());
            else if (eat('-'))
                addends.emplace_back(-1, term());
            else
                break;
        }
        if (addends.size() == 1 && addends[0].first == 1) return addends[0].second;
        return make_sum(std::move(addends), {start, pos});
    }

    TermPtr term() {
        skip_ws();
        std::size_t start = pos;
        std::vector<TermPtr> factors;
        factors.push_back(factor());
        while (eat('*')) factors.push_back(factor());
        if (factors.size() == 1) return factors[0];
        return make_product(std::move(factors), {start, pos});
    }

    TermPtr factor() {
        skip_ws();
        std::size_t start = pos;
        TermPtr b = base();
        if (eat('^')) {
            TermPtr e = factor();  // right-associative
            return make_pow(std::move(b), std::move(e), {start, pos});
        }
        return b;
    }

    TermPtr base() {
        skip_ws();
        std::size_t start = pos;
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = integer();
            if (eat('/')) {
                skip_ws();
                std::size_t den_at = pos;
                BigInt den = integer();
                if (den.is_zero())
                    throw SyntaxError("zero denominator in rational literal", den_at + 1, "");
                return make_rational(BigRat(num, den), {start, pos});
            }
            return make_rational(BigRat(num), {start, pos});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id = name();
            std::size_t after = pos;
            if (id == "pi" || id == "gamma" || id == "catalan") {
                skip_ws();
                if (pos < src.size() && src[pos] == '(')
                    throw SyntaxError("'" + id + "' is a constant, not a function", pos + 1,
                                      "an operator or end of input");
                ConstName n = id == "pi"      ? ConstName::Pi
                            : id == "gamma"   ? ConstName::Gamma
                                              : ConstName::Catalan;
                return make_constant(n, {start, after});
            }
            if (id == "ln" || id == "sqrt" || id == "exp" || id == "zeta" || id == "li3") {
                expect('(', "'('");
                TermPtr arg = expr();
                expect(')', "')'");
                FuncName fn = id == "ln"     ? FuncName::Ln
                            : id == "sqrt"   ? FuncName::Sqrt
                            : id == "exp"    ? FuncName::Exp
                            : id == "zeta"   ? FuncName::Zeta
                                             : FuncName::Li3;
                return make_call(fn, std::move(arg), {start, pos});
            }
            throw UnknownNameError(id, start + 1);
        }
        if (c == '(') {
            ++pos;
            TermPtr inner = expr();
            expect(')', "')'");
            return inner;
        }
        std::string got = at_end() ? "unexpected end of input"
                                   : std::string("unexpected '") + c + "'";
        fail(got, "an integer, a name, or '('");
    }
};

}  // namespace

TermPtr parse_term(std::string_view src) {
    Parser p{src};
    TermPtr e = p.expr();
    if (!p.at_end())
        throw SyntaxError(std::string("unexpected '") + p.peek() + "'", p.pos + 1,
                          "'+', '-', '*', '^', or end of input");
    return e;
}

// ---------------------------------------------------------------------------
// Rational folding

std::optional<BigRat> fold_rational(const TermExpr& e) {
    if (const auto* r = std::get_if<TermExpr::Rational>(&e.node)) return r->value;
    if (const auto* s = std::get_if<TermExpr::Sum>(&e.node)) {
        BigRat acc;
        for (const auto& [sign, t] : s->addends) {
            auto v = fold_rational(*t);
            if (!v) return std::nullopt;
            acc += sign > 0 ? *v : -*v;
        }
        return acc;
    }
    if (const auto* p = std::get_if<TermExpr::Product>(&e.node)) {
        BigRat acc(1);
        for (const auto& f : p->factors) {
            auto v = fold_rational(*f);
            if (!v) return std::nullopt;
            acc = acc * *v;
        }
        return acc;
    }
    if (const auto* w = std::get_if<TermExpr::Pow>(&e.node)) {
        auto b = fold_rational(*w->base);
        auto x = fold_rational(*w->exponent);
        if (!b || !x || !x->is_integer() || !x->numerator().fits_long()) return std::nullopt;
        long n = x->numerator().to_long();
        if (n < -100000 || n > 100000) return std::nullopt;
        if (b->is_zero() && n < 0) return std::nullopt;
        return BigRat::pow(*b, n);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

ArbReal eval_node(const TermExpr& e, int D);

long zeta_arg(const TermExpr& call_node, const TermExpr& arg) {
    auto v = fold_rational(arg);
    if (!v || !v->is_integer() || !v->numerator().fits_long() || v->numerator().to_long() < 2)
        throw DomainError("zeta argument must reduce to an integer >= 2", call_node.span);
    return v->numerator().to_long();
}

ArbReal eval_call(const TermExpr& e, const TermExpr::Call& c, int D) {
    switch (c.fn) {
        case FuncName::Ln: {
            ArbReal v = eval_node(*c.arg, D);
            if (v.sign() <= 0) throw DomainError("ln of a non-positive value", c.arg->span);
            return arb_ln(v, D);
        }
        case FuncName::Sqrt: {
            ArbReal v = eval_node(*c.arg, D);
            if (v.sign() < 0) throw DomainError("sqrt of a negative value", c.arg->span);
            return arb_sqrt(v, D);
        }
        case FuncName::Exp:
            return arb_exp(eval_node(*c.arg, D), D);
        case FuncName::Zeta:
            return eval_constant(ConstantId::zeta(zeta_arg(e, *c.arg)), D);
        case FuncName::Li3: {
            auto v = fold_rational(*c.arg);
            if (!v)
                throw DomainError("li3 argument must be an exact rational", c.arg->span);
            try {
                return eval_constant(ConstantId::li3(*v), D);
            } catch (const UnsupportedConstantError& err) {
                throw DomainError(err.what(), c.arg->span);
            }
        }
    }
    throw Error("unreachable function");
}

ArbReal eval_pow(const TermExpr& e, const TermExpr::Pow& p, int D) {
    ArbReal base = eval_node(*p.base, D);
    auto exp_rat = fold_rational(*p.exponent);
    if (exp_rat && exp_rat->is_integer()) {
        if (base.is_zero() && exp_rat->sign() < 0)
            throw DomainError("zero base with negative exponent", e.span);
        return arb_pow_int(base, exp_rat->numerator(), D);
    }
    if (base.sign() <= 0)
        throw DomainError("non-integer power of a non-positive base", e.span);
    ArbReal exponent = exp_rat ? ArbReal(*exp_rat, D) : eval_node(*p.exponent, D);
    return arb_pow(base, exponent, D);
}

ArbReal eval_node(const TermExpr& e, int D) {
    if (const auto* r = std::get_if<TermExpr::Rational>(&e.node)) return ArbReal(r->value, D);
    if (const auto* c = std::get_if<TermExpr::Constant>(&e.node)) {
        switch (c->name) {
            case ConstName::Pi: return eval_constant(ConstantId::pi(), D);
            case ConstName::Gamma: return eval_constant(ConstantId::euler_gamma(), D);
            case ConstName::Catalan: return eval_constant(ConstantId::catalan(), D);
        }
    }
    if (const auto* c = std::get_if<TermExpr::Call>(&e.node)) return eval_call(e, *c, D);
    if (const auto* p = std::get_if<TermExpr::Pow>(&e.node)) return eval_pow(e, *p, D);
    if (const auto* p = std::get_if<TermExpr::Product>(&e.node)) {
        ArbReal acc(1, D);
        for (const auto& f : p->factors) acc = acc * eval_node(*f, D);
        return acc;
    }
    const auto& s = std::get<TermExpr::Sum>(e.node);
    ArbReal acc(D);
    for (const auto& [sign, t] : s.addends) {
        ArbReal v = eval_node(*t, D);
        acc = sign > 0 ? acc + v : acc - v;
    }
    return acc;
}

}  // namespace

ArbReal evaluate(const TermExpr& e, int P) {
    int D = P + kGuardDigits;
    return eval_node(e, D).round_to(P);
}

// ---------------------------------------------------------------------------
// Weight

namespace {

bool is_algebraic(const TermExpr& e) {
    if (std::holds_alternative<TermExpr::Rational>(e.node)) return true;
    if (const auto* s = std::get_if<TermExpr::Sum>(&e.node)) {
        for (const auto& [sign, t] : s->addends)
            if (!is_algebraic(*t)) return false;
        return true;
    }
    if (const auto* p = std::get_if<TermExpr::Product>(&e.node)) {
        for (const auto& f : p->factors)
            if (!is_algebraic(*f)) return false;
        return true;
    }
    if (const auto* w = std::get_if<TermExpr::Pow>(&e.node))
        return is_algebraic(*w->base) && fold_rational(*w->exponent).has_value();
    if (const auto* c = std::get_if<TermExpr::Call>(&e.node))
        return c->fn == FuncName::Sqrt && is_algebraic(*c->arg);
    return false;
}

}  // namespace

std::optional<long> weight(const TermExpr& e) {
    if (is_algebraic(e)) return 0;
    if (const auto* c = std::get_if<TermExpr::Constant>(&e.node)) {
        switch (c->name) {
            case ConstName::Pi: return 1;
            case ConstName::Gamma: return 1;  // convention; not fixed by Boros-Moll
            case ConstName::Catalan: return 2;
        }
    }
    if (const auto* c = std::get_if<TermExpr::Call>(&e.node)) {
        switch (c->fn) {
            case FuncName::Ln:
                if (is_algebraic(*c->arg)) return 1;
                return std::nullopt;
            case FuncName::Zeta: {
                auto v = fold_rational(*c->arg);
                if (v && v->is_integer() && v->numerator().fits_long() &&
                    v->numerator().to_long() >= 2)
                    return v->numerator().to_long();
                return std::nullopt;
            }
            case FuncName::Li3: return 3;
            default: return std::nullopt;
        }
    }
    if (const auto* w = std::get_if<TermExpr::Pow>(&e.node)) {
        auto x = fold_rational(*w->exponent);
        if (!x || !x->is_integer() || !x->numerator().fits_long()) return std::nullopt;
        auto inner = weight(*w->base);
        if (!inner) return std::nullopt;
        return x->numerator().to_long() * *inner;
    }
    if (const auto* p = std::get_if<TermExpr::Product>(&e.node)) {
        long acc = 0;
        for (const auto& f : p->factors) {
            auto v = weight(*f);
            if (!v) return std::nullopt;
            acc += *v;
        }
        return acc;
    }
    if (const auto* s = std::get_if<TermExpr::Sum>(&e.node)) {
        if (s->addends.size() == 1 && s->addends[0].first > 0) return weight(*s->addends[0].second);
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

enum Level { kSum = 0, kProduct = 1, kPowBase = 2 };

void print_node(const TermExpr& e, int level, std::string& out);

void print_wrapped(const TermExpr& e, bool need_parens, std::string& out) {
    if (need_parens) out += "(";
    print_node(e, kSum, out);
    if (need_parens) out += ")";
}

const char* const_name(ConstName n) {
    switch (n) {
        case ConstName::Pi: return "pi";
        case ConstName::Gamma: return "gamma";
        case ConstName::Catalan: return "catalan";
    }
    return "?";
}

const char* func_name(FuncName f) {
    switch (f) {
        case FuncName::Ln: return "ln";
        case FuncName::Sqrt: return "sqrt";
        case FuncName::Exp: return "exp";
        case FuncName::Zeta: return "zeta";
        case FuncName::Li3: return "li3";
    }
    return "?";
}

void print_node(const TermExpr& e, int level, std::string& out) {
    if (const auto* r = std::get_if<TermExpr::Rational>(&e.node)) {
        // Unary minus only parses at an expression head, so negative
        // literals render through a parenthesized subtraction (spaced the
        // way the Sum renderer prints, keeping reformatting stable).
        if (r->value.sign() < 0) {
            out += "(0 - " + (-r->value).to_string() + ")";
        } else {
            out += r->value.to_string();
        }
        return;
    }
    if (const auto* c = std::get_if<TermExpr::Constant>(&e.node)) {
        out += const_name(c->name);
        return;
    }
    if (const auto* c = std::get_if<TermExpr::Call>(&e.node)) {
        out += func_name(c->fn);
        out += "(";
        print_node(*c->arg, kSum, out);
        out += ")";
        return;
    }
    if (const auto* w = std::get_if<TermExpr::Pow>(&e.node)) {
        // Negative rationals bring their own parentheses.
        bool base_parens = !(std::holds_alternative<TermExpr::Constant>(w->base->node) ||
                             std::holds_alternative<TermExpr::Call>(w->base->node) ||
                             std::holds_alternative<TermExpr::Rational>(w->base->node));
        print_wrapped(*w->base, base_parens, out);
        out += "^";
        const TermExpr& x = *w->exponent;
        bool exp_parens = std::holds_alternative<TermExpr::Sum>(x.node) ||
                          std::holds_alternative<TermExpr::Product>(x.node);
        print_wrapped(x, exp_parens, out);
        return;
    }
    if (const auto* p = std::get_if<TermExpr::Product>(&e.node)) {
        if (level > kProduct) out += "(";
        bool first = true;
        for (const auto& f : p->factors) {
            if (!first) out += "*";
            first = false;
            print_node(*f, kProduct, out);
        }
        if (level > kProduct) out += ")";
        return;
    }
    const auto& s = std::get<TermExpr::Sum>(e.node);
    if (level > kSum) out += "(";
    bool first = true;
    for (const auto& [sign, t] : s.addends) {
        if (first) {
            if (sign < 0) out += "-";
        } else {
            out += sign > 0 ? " + " : " - ";
        }
        first = false;
        print_node(*t, kProduct, out);
    }
    if (level > kSum) out += ")";
}

}  // namespace

std::string format_term(const TermExpr& e) {
    std::string out;
    print_node(e, kSum, out);
    return out;
}

std::string format_closed_form(const ClosedForm& cf) {
    std::string out;
    bool have_any = false;
    if (!cf.constant_term.is_zero()) {
        out += cf.constant_term.to_string();
        have_any = true;
    }
    for (const auto& t : cf.terms) {
        BigRat c = t.coefficient;
        if (!have_any) {
            if (c.sign() < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c.sign() < 0 ? " - " : " + ";
            if (c.sign() < 0) c = -c;
        }
        out += c.to_string() + "*" + (t.text.empty() ? format_term(t.term) : t.text);
        have_any = true;
    }
    return have_any ? out : "0";
}

namespace {

void collect_literal_bound(const TermExpr& e, BigInt& max_abs) {
    auto consider = [&max_abs](const BigInt& v) {
        BigInt a = v.abs();
        if (a > max_abs) max_abs = a;
    };
    if (const auto* r = std::get_if<TermExpr::Rational>(&e.node)) {
        consider(r->value.numerator());
        consider(r->value.denominator());
        return;
    }
    if (const auto* c = std::get_if<TermExpr::Call>(&e.node)) {
        collect_literal_bound(*c->arg, max_abs);
        return;
    }
    if (const auto* w = std::get_if<TermExpr::Pow>(&e.node)) {
        collect_literal_bound(*w->base, max_abs);
        collect_literal_bound(*w->exponent, max_abs);
        return;
    }
    if (const auto* p = std::get_if<TermExpr::Product>(&e.node)) {
        for (const auto& f : p->factors) collect_literal_bound(*f, max_abs);
        return;
    }
    if (const auto* s = std::get_if<TermExpr::Sum>(&e.node)) {
        for (const auto& [sign, t] : s->addends) collect_literal_bound(*t, max_abs);
        return;
    }
}

}  // namespace

SimplicityVerdict classify_simplicity(const ClosedForm& cf) {
    SimplicityVerdict v;
    v.term_count = static_cast<long>(cf.terms.size()) + (cf.constant_term.is_zero() ? 0 : 1);
    if (v.term_count == 0) v.term_count = 1;  // the bare "0"
    BigInt max_abs(0);
    if (!cf.constant_term.is_zero()) {
        BigInt n = cf.constant_term.numerator().abs();
        BigInt d = cf.constant_term.denominator();
        if (n > max_abs) max_abs = n;
        if (d > max_abs) max_abs = d;
    }
    for (const auto& t : cf.terms) {
        BigInt n = t.coefficient.numerator().abs();
        BigInt d = t.coefficient.denominator();
        if (n > max_abs) max_abs = n;
        if (d > max_abs) max_abs = d;
        collect_literal_bound(*t.term, max_abs);
    }
    v.max_abs_integer = max_abs;
    v.is_simple = v.term_count < 10 && max_abs < BigInt(500);
    return v;
}

// ---------------------------------------------------------------------------
// Basis files

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

BasisFile parse_basis_text(std::string_view content) {
    BasisFile out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool first_entry = true;
    while (start <= content.size()) {
        std::size_t nl = content.find('\n', start);
        std::string_view raw = nl == std::string_view::npos
                                   ? content.substr(start)
                                   : content.substr(start, nl - start);
        start = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        try {
            if (first_entry && line.rfind("target:", 0) == 0) {
                std::string expr_text = trim(line.substr(7));
                out.target = ParsedTerm{expr_text, parse_term(expr_text)};
            } else {
                out.terms.push_back(ParsedTerm{line, parse_term(line)});
            }
        } catch (const Error& err) {
            throw SyntaxError(std::string("line ") + std::to_string(line_no) + ": " + err.what(),
                              1, "");
        }
        first_entry = false;
    }
    return out;
}

BasisFile load_basis_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open basis file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_basis_text(buf.str());
}

}  // namespace relq
