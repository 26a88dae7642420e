#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "caseforge/term.hpp"

namespace caseforge {

/// Variable -> term bindings. apply() resolves bindings all the way down,
/// so applying twice equals applying once; the occurs check in bind()
/// keeps the binding graph acyclic.
class Substitution {
public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  const Term* lookup(const std::string& var) const;

  // Dereferences a top-level variable chain; does not descend into args.
  Term walk(Term t) const;

  Term apply(const Term& t) const;
  Literal apply(const Literal& lit) const;
  BodyElement apply(const BodyElement& e) const;
  Rule apply(const Rule& r) const;

  // Adds var -> term; fails (returns false) when the occurs check trips.
  bool bind(const std::string& var, const Term& t);

  Substitution restricted_to(const std::set<std::string>& vars) const;

  // apply(compose(s1,s2), t) == apply(s2, apply(s1, t))
  static Substitution compose(const Substitution& first, const Substitution& second);

  const std::map<std::string, Term>& bindings() const { return bindings_; }

  bool operator==(const Substitution& other) const {
    return bindings_ == other.bindings_;
  }
  bool operator<(const Substitution& other) const {
    return bindings_ < other.bindings_;
  }

private:
  bool occurs(const std::string& var, const Term& t) const;

  std::map<std::string, Term> bindings_;
};

/// Robinson unification with occurs check, extending `s`.
/// Failure is a value (nullopt), not an error.
std::optional<Substitution> unify(const Term& a, const Term& b, Substitution s);
std::optional<Substitution> unify(const Literal& a, const Literal& b, Substitution s);

}  // namespace caseforge
