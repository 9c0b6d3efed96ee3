#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relq/corpus.hpp"
#include "relq/hunt.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoRelation = 2;
constexpr int kExitLimit = 3;
constexpr int kExitUsage = 64;

int default_digits() {
    if (const char* env = std::getenv("RELQ_DEFAULT_DIGITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 10 && v <= 100000) return static_cast<int>(v);
        std::cerr << "relq: ignoring invalid RELQ_DEFAULT_DIGITS='" << env << "'\n";
    }
    return 24;
}

int outcome_exit_code(relq::PslqOutcome::Kind kind) {
    switch (kind) {
        case relq::PslqOutcome::Kind::RelationFound: return kExitOk;
        case relq::PslqOutcome::Kind::NoRelation: return kExitNoRelation;
        case relq::PslqOutcome::Kind::PrecisionExhausted:
        case relq::PslqOutcome::Kind::IterationLimit: return kExitLimit;
    }
    return kExitNoRelation;
}

struct PslqFlags {
    std::string gamma;
    std::string eps;
    long max_iter = 0;
    std::string max_coeff;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gamma", gamma, "row-selection weight (default 2/sqrt(3))");
        cmd->add_option("--eps", eps, "detection threshold (default 1e-(digits-5))");
        cmd->add_option("--max-iter", max_iter, "iteration budget (default 10 n^3)");
        cmd->add_option("--max-coeff", max_coeff, "stop once relations this large are excluded");
    }
    void apply(relq::PslqParams& params, int digits) const {
        if (!gamma.empty()) params.gamma = relq::ArbReal::parse(gamma, digits);
        if (!eps.empty()) params.epsilon = relq::ArbReal::parse(eps, digits);
        if (max_iter > 0) params.max_iterations = max_iter;
        if (!max_coeff.empty()) params.max_coeff = relq::BigInt(max_coeff);
    }
};

void print_report(const relq::HuntReport& rep, bool json) {
    if (json)
        std::cout << relq::report_to_json(rep).dump(2) << "\n";
    else
        std::cout << relq::report_to_text(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relq - integer-relation hunts for mathematical constants"};
    app.require_subcommand(1);

    // hunt
    auto* hunt_cmd = app.add_subcommand("hunt", "search for a closed form of a target");
    std::string target_text;
    std::string basis_path;
    std::vector<std::string> term_texts;
    int hunt_digits = default_digits();
    PslqFlags hunt_flags;
    bool hunt_json = false, hunt_text = false;
    hunt_cmd->add_option("--target", target_text, "target expression");
    hunt_cmd->add_option("--basis", basis_path, "basis file, one expression per line");
    hunt_cmd->add_option("--term", term_texts, "basis term (repeatable)");
    hunt_cmd->add_option("--digits", hunt_digits, "working precision in decimal digits");
    hunt_flags.attach(hunt_cmd);
    hunt_cmd->add_flag("--json", hunt_json, "JSON report");
    hunt_cmd->add_flag("--text", hunt_text, "plain-text report (default)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
    std::string eval_expr;
    int eval_digits = default_digits();
    eval_cmd->add_option("expr", eval_expr, "expression to evaluate")->required();
    eval_cmd->add_option("--digits", eval_digits, "significant digits to print");

    // pslq
    auto* pslq_cmd = app.add_subcommand("pslq", "run PSLQ on a raw numeric vector");
    std::string vector_path;
    int pslq_digits = default_digits();
    PslqFlags pslq_flags;
    bool pslq_json = false, pslq_text = false;
    pslq_cmd->add_option("--vector", vector_path, "file with one decimal number per line")
        ->required();
    pslq_cmd->add_option("--digits", pslq_digits, "working precision in decimal digits");
    pslq_flags.attach(pslq_cmd);
    pslq_cmd->add_flag("--json", pslq_json, "JSON report");
    pslq_cmd->add_flag("--text", pslq_text, "plain-text report (default)");

    // corpus run
    auto* corpus_cmd = app.add_subcommand("corpus", "built-in regression corpus");
    corpus_cmd->require_subcommand(1);
    auto* corpus_run = corpus_cmd->add_subcommand("run", "run every corpus case");
    bool corpus_json = false;
    corpus_run->add_flag("--json", corpus_json, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*hunt_cmd) {
            if (!basis_path.empty() && !term_texts.empty()) {
                std::cerr << "relq hunt: use either --basis or --term, not both\n";
                return kExitUsage;
            }
            std::vector<relq::ParsedTerm> basis;
            std::optional<relq::ParsedTerm> file_target;
            if (!basis_path.empty()) {
                relq::BasisFile f = relq::load_basis_file(basis_path);
                file_target = f.target;
                basis = std::move(f.terms);
            } else {
                for (const auto& t : term_texts)
                    basis.push_back(relq::ParsedTerm{t, relq::parse_term(t)});
            }
            relq::ParsedTerm target;
            if (!target_text.empty())
                target = relq::ParsedTerm{target_text, relq::parse_term(target_text)};
            else if (file_target)
                target = *file_target;
            else {
                std::cerr << "relq hunt: no target (use --target or a 'target:' line)\n";
                return kExitUsage;
            }
            if (basis.empty()) {
                std::cerr << "relq hunt: empty basis (use --term or --basis)\n";
                return kExitUsage;
            }
            relq::HuntSpec spec =
                relq::HuntSpec::with_defaults(std::move(target), std::move(basis), hunt_digits);
            hunt_flags.apply(spec.params, hunt_digits);
            spec.output = hunt_json && !hunt_text ? relq::OutputMode::Json : relq::OutputMode::Text;
            relq::HuntReport rep = relq::hunt(spec);
            print_report(rep, spec.output == relq::OutputMode::Json);
            return outcome_exit_code(rep.outcome);
        }

        if (*eval_cmd) {
            relq::ArbReal v = relq::evaluate(relq::parse_term(eval_expr), eval_digits);
            std::cout << v.to_string(eval_digits) << "\n";
            return kExitOk;
        }

        if (*pslq_cmd) {
            std::vector<relq::ArbReal> x = relq::read_vector_file(vector_path, pslq_digits);
            relq::PslqParams params = relq::PslqParams::defaults(pslq_digits);
            pslq_flags.apply(params, pslq_digits);
            relq::PslqOutcome res = relq::pslq_run(x, params);

            relq::HuntReport rep;
            rep.outcome = res.kind;
            rep.relation = res.relation;
            if (res.relation) rep.confidence = res.relation->confidence;
            rep.exclusion_bound = res.bound;
            rep.iterations = res.iterations;
            rep.target_text = "";
            for (const auto& v : x) rep.basis_texts.push_back(relq::report_number(v));
            rep.digits = pslq_digits;
            rep.gamma = params.gamma;
            rep.eps = params.epsilon;
            print_report(rep, pslq_json && !pslq_text);
            return outcome_exit_code(res.kind);
        }

        if (*corpus_run) {
            relq::CorpusReport rep = relq::run_corpus();
            if (corpus_json)
                std::cout << relq::corpus_to_json(rep).dump(2) << "\n";
            else
                std::cout << relq::corpus_to_text(rep);
            return rep.all_passed ? kExitOk : kExitNoRelation;
        }
    } catch (const relq::Error& e) {
        std::cerr << "relq: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
