#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace caseforge {

// Lexical classes of the program syntax.
bool is_atom_name(const std::string& s);      // [a-z][A-Za-z0-9_]*
bool is_variable_name(const std::string& s);  // [A-Z_][A-Za-z0-9_]*

enum class TermKind { atom, variable, number, compound, list };

/// First-order term: atom, variable, integer constant, compound, or list.
/// Atoms whose spelling does not match is_atom_name print quoted.
/// Integers are inert constants; there is no arithmetic.
class Term {
public:
  Term() : kind_(TermKind::atom) {}

  static Term atom(std::string name);
  static Term var(std::string name);
  static Term number(std::int64_t value);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term list(std::vector<Term> elements);

  TermKind kind() const { return kind_; }
  // Atom name, variable name, or compound functor.
  const std::string& text() const { return text_; }
  std::int64_t value() const { return value_; }
  // Compound arguments or list elements.
  const std::vector<Term>& args() const { return args_; }

  bool is_atom() const { return kind_ == TermKind::atom; }
  bool is_variable() const { return kind_ == TermKind::variable; }
  bool is_ground() const;
  void collect_variables(std::set<std::string>& out) const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;

private:
  TermKind kind_;
  std::string text_;
  std::int64_t value_ = 0;
  std::vector<Term> args_;
};

/// A possibly classically-negated atom: p(t1,...,tn) or -p(t1,...,tn).
struct Literal {
  bool classical_neg = false;
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  void collect_variables(std::set<std::string>& out) const;

  bool operator==(const Literal& other) const;
  bool operator!=(const Literal& other) const { return !(*this == other); }
  bool operator<(const Literal& other) const;
};

Literal make_literal(std::string predicate, std::vector<Term> args = {});
Literal make_neg_literal(std::string predicate, std::vector<Term> args = {});

/// Body element: a literal call, or its default negation `not L`.
struct BodyElement {
  bool naf = false;
  Literal lit;

  bool operator==(const BodyElement& other) const {
    return naf == other.naf && lit == other.lit;
  }
};

/// `head :- body.`; a missing head makes the rule an integrity constraint.
struct Rule {
  std::optional<Literal> head;
  std::vector<BodyElement> body;

  bool is_fact() const { return head.has_value() && body.empty(); }
  bool is_constraint() const { return !head.has_value(); }
  void collect_variables(std::set<std::string>& out) const;

  bool operator==(const Rule& other) const {
    return head == other.head && body == other.body;
  }
};

struct Program {
  std::vector<Rule> rules;

  bool operator==(const Program& other) const { return rules == other.rules; }
};

/// A query is the body of `?- b1, ..., bn.`
struct Query {
  std::vector<BodyElement> elements;

  void collect_variables(std::set<std::string>& out) const;
  bool operator==(const Query& other) const { return elements == other.elements; }
};

// Safety: every variable in the head and every variable under `not`
// must occur in a positive body call.
std::vector<std::string> unsafe_variables(const Rule& r);

struct SafetyViolation {
  std::size_t rule_index;
  std::string variable;
};
std::vector<SafetyViolation> safety_violations(const Program& p);

// Predicate signature key, e.g. "p/2" or "-p/2" for the classical negation.
std::string predicate_key(const Literal& lit);

/// Appends `:- p(X1..Xn), -p(X1..Xn).` for every predicate used with both
/// signs, reducing classical negation to constraint-guarded renaming.
Program with_classical_consistency(Program p);

}  // namespace caseforge
