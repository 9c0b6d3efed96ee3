#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "relq/hunt.hpp"

namespace relq {

// One built-in regression case. Informational cases (asserted = false)
// record what happened without contributing to pass/fail.
struct CorpusCase {
    std::string name;
    bool asserted = true;
    bool passed = true;
    std::string details;
    nlohmann::ordered_json data;
};

struct CorpusReport {
    std::vector<CorpusCase> cases;
    bool all_passed = true;
    double wall_ms = 0.0;
};

// Runs the built-in corpus of classic zeta(3) identities: the 21-digit
// closed-form reproduction at 24 digits, identity rediscoveries at 50
// digits, digit-accuracy anchors, and the precision-dependence control
// digits. digits_overrides remaps the working precision per case name;
// a case run off its reference precision downgrades to informational.
CorpusReport run_corpus(const std::map<std::string, int>& digits_overrides = {});

nlohmann::ordered_json corpus_to_json(const CorpusReport& report);
std::string corpus_to_text(const CorpusReport& report);

}  // namespace relq
