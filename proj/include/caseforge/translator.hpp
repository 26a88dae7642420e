#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "caseforge/case_model.hpp"
#include "caseforge/term.hpp"

namespace caseforge {

class TranslateError : public std::runtime_error {
public:
  explicit TranslateError(const std::string& message) : std::runtime_error(message) {}
};

/// The five-part export of a case: rules+facts for the case body, the
/// top-level claim as positive and negated query, theory definitions with
/// their variables preserved, and one integrity constraint per defeater.
struct ExportBundle {
  Program core;
  Query positive_query;
  Query negative_query;
  Program theories;
  Program defeater_constraints;
};

/// `application(none)` for base-case nodes, `application(instance_k)` for
/// the k-th theory application in document order, or the `Application`
/// variable inside theory templates.
Term application_none();
Term application_instance(std::size_t k);

/// ClaimPredicate expansion: head `claim(App,[O],[P],[E])` plus the
/// PropertyList derived from the relationship mode — empty for off, each
/// property over all objects for joint, the i-th property over the i-th
/// object for positional, and every (property, object) pair for
/// distributive; environments are appended when include_environment is set.
struct PropertyExpansion {
  Literal head;
  std::vector<Literal> property_list;
};
PropertyExpansion expand_claim_predicate(const Node& node, const Term& application_tag);

/// Statement rules of one node per the node-kind mapping table. Arguments
/// translate to nothing; their children are flattened into the parent body.
std::vector<Rule> translate_node(const Node& node, const AssuranceCase& c);

ExportBundle translate_case(const AssuranceCase& c);

struct TheoryInstance {
  std::vector<Rule> rules;
  // (application node, theory node) pairs to be discharged by the checks.
  std::vector<std::pair<std::string, std::string>> obligations;
};

/// Grounds a theory subtree with the application's binding and a fresh
/// instance tag.
TheoryInstance instantiate_theory(const std::string& theory_root, const TheoryApplication& app,
                                  const AssuranceCase& c);

/// Executable program for a case: core plus every theory application
/// instantiated. This is what queries and checks run against.
Program analysis_program(const AssuranceCase& c);

}  // namespace caseforge
