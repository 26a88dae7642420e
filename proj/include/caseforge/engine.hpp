#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "caseforge/substitution.hpp"
#include "caseforge/term.hpp"

namespace caseforge {

class EvalError : public std::runtime_error {
public:
  explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

enum class ProofStatus { proved, failed, naf_holds, naf_fails };

/// Node of a proof or failure explanation.
///   proved    — children are the subproofs of the used rule's body
///   failed    — children show, per applicable rule, the first failing element
///   naf_holds — `not L` holds; children explain why L fails
///   naf_fails — `not L` fails; children carry the proof of L
struct JustificationTree {
  bool naf = false;  // node literal is `not lit`
  Literal literal;
  ProofStatus status = ProofStatus::proved;
  std::optional<std::size_t> rule_index;
  std::string note;  // "no matching clause", "variant loop", ...
  std::vector<JustificationTree> children;

  std::size_t node_count() const;
};

struct Answer {
  Substitution bindings;          // restricted to query variables
  std::vector<Literal> model;     // ground literals used in the proof, sorted
  JustificationTree justification;
};

struct SolveOptions {
  std::size_t max_answers = 10;
  std::size_t depth_limit = 10000;
};

constexpr std::size_t kAllAnswers = static_cast<std::size_t>(-1);

struct StratifyResult {
  bool stratified = false;
  std::map<std::string, int> strata;      // predicate name (with sign) -> stratum
  std::vector<std::string> cycle;         // witness when not stratified
};

/// Assigns strata over the predicate dependency graph; a cycle through
/// `not` makes the program non-stratified and is returned as the witness.
StratifyResult stratify(const Program& p);

/// Top-down evaluation of a stratified, safety-valid program. Answers are
/// the substitutions that make the query true in the perfect model, in
/// rule-order depth-first discovery order. Positive loops are pruned by a
/// variant check on the goal stack; `not L` requires L ground at call time.
std::vector<Answer> solve(const Program& p, const Query& q, const SolveOptions& opts = {});

/// Succeeds exactly when `solve` has no answer for the positive query,
/// returning the failure explanation.
std::optional<Answer> prove_negation(const Program& p, const Query& q,
                                     const SolveOptions& opts = {});

struct ConstraintViolation {
  Rule constraint;
  Substitution witness;
  JustificationTree justification;
};

/// Enumerates all witnesses of each headless rule's body against p.
std::vector<ConstraintViolation> check_constraints(const Program& p,
                                                   const Program& constraints,
                                                   const SolveOptions& opts = {});

/// Innermost causes of a failure tree: literals with no matching clause and
/// the fact leaves of proofs under failed `not L` nodes.
std::vector<Literal> blamed_leaves(const JustificationTree& tree);

}  // namespace caseforge
