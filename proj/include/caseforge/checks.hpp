#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caseforge/case_model.hpp"
#include "caseforge/engine.hpp"
#include "caseforge/term.hpp"

namespace caseforge {

class CheckError : public std::runtime_error {
public:
  explicit CheckError(const std::string& message) : std::runtime_error(message) {}
};

struct AdequacyRule {
  std::string name;
  std::vector<Literal> body;  // conjunction, positive literals only
};

struct CompletenessRule {
  std::string name;
  std::string type_name;
  std::string property;
};

/// User-authored semantic rules, loaded from a sectioned rules file:
///   %% consistency   — `.lp` integrity constraints
///   %% adequacy      — `name: lit1, lit2, ...`
///   %% completeness  — `name: type => property`
///   %% harmony       — `.lp` integrity constraints
struct SemanticRuleSet {
  Program consistency;
  std::vector<AdequacyRule> adequacy;
  std::vector<CompletenessRule> completeness;
  Program harmony;
};

SemanticRuleSet parse_rule_set(const std::string& text);
SemanticRuleSet load_rule_set_file(const std::string& path);

struct Verdict {
  std::string check_name;
  bool passed = false;
  std::vector<Substitution> witnesses;
  std::vector<Literal> blamed;
  std::optional<JustificationTree> justification;
  std::string detail;
};

/// Top-level claim provable and its negation not: no unresolved defeaters
/// blocking the argument. On failure the blame names what blocked it.
Verdict check_indefeasibility(const AssuranceCase& c, const SolveOptions& opts = {});

/// Every theory application matches the theory's properties node for node,
/// and every binding target is a declared instance of the variable's type
/// (the type is the variable name lowercased).
Verdict check_theory_application(const AssuranceCase& c);

/// Consistency rules as global integrity constraints over the exported case.
Verdict check_consistency(const AssuranceCase& c, const SemanticRuleSet& rules,
                          const SolveOptions& opts = {});

/// Per adequacy rule: is there an object carrying all listed properties?
/// On failure, blames the missing property of the closest candidate.
std::vector<Verdict> check_adequacy(const AssuranceCase& c, const SemanticRuleSet& rules,
                                    const SolveOptions& opts = {});

/// Per completeness rule: every declared instance of the type has the
/// property; witnesses are the instances that lack it.
std::vector<Verdict> check_completeness(const AssuranceCase& c, const SemanticRuleSet& rules,
                                        const SolveOptions& opts = {});

/// Harmony rules as constraints over the case plus instantiated theories.
Verdict check_theory_harmony(const AssuranceCase& c, const SemanticRuleSet& rules,
                             const SolveOptions& opts = {});

}  // namespace caseforge
