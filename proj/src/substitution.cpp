#include "caseforge/substitution.hpp"

namespace caseforge {

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::walk(Term t) const {
  while (t.is_variable()) {
    const Term* bound = lookup(t.text());
    if (!bound) break;
    t = *bound;
  }
  return t;
}

Term Substitution::apply(const Term& t) const {
  Term w = walk(t);
  switch (w.kind()) {
    case TermKind::atom:
    case TermKind::variable:
    case TermKind::number:
      return w;
    case TermKind::compound: {
      std::vector<Term> args;
      args.reserve(w.args().size());
      for (const Term& a : w.args()) args.push_back(apply(a));
      return Term::compound(w.text(), std::move(args));
    }
    case TermKind::list: {
      std::vector<Term> elems;
      elems.reserve(w.args().size());
      for (const Term& a : w.args()) elems.push_back(apply(a));
      return Term::list(std::move(elems));
    }
  }
  return w;
}

Literal Substitution::apply(const Literal& lit) const {
  Literal out = lit;
  for (Term& a : out.args) a = apply(a);
  return out;
}

BodyElement Substitution::apply(const BodyElement& e) const {
  return BodyElement{e.naf, apply(e.lit)};
}

Rule Substitution::apply(const Rule& r) const {
  Rule out;
  if (r.head) out.head = apply(*r.head);
  out.body.reserve(r.body.size());
  for (const BodyElement& e : r.body) out.body.push_back(apply(e));
  return out;
}

bool Substitution::occurs(const std::string& var, const Term& t) const {
  Term w = walk(t);
  if (w.is_variable()) return w.text() == var;
  for (const Term& a : w.args()) {
    if (occurs(var, a)) return true;
  }
  return false;
}

bool Substitution::bind(const std::string& var, const Term& t) {
  Term w = walk(t);
  if (w.is_variable() && w.text() == var) return true;
  if (occurs(var, w)) return false;
  bindings_[var] = w;
  return true;
}

Substitution Substitution::restricted_to(const std::set<std::string>& vars) const {
  Substitution out;
  for (const std::string& v : vars) {
    Term resolved = apply(Term::var(v));
    if (!(resolved.is_variable() && resolved.text() == v)) {
      out.bindings_[v] = resolved;
    }
  }
  return out;
}

Substitution Substitution::compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [var, term] : first.bindings_) {
    out.bindings_[var] = second.apply(term);
  }
  for (const auto& [var, term] : second.bindings_) {
    if (!out.bindings_.count(var)) out.bindings_[var] = term;
  }
  return out;
}

std::optional<Substitution> unify(const Term& a, const Term& b, Substitution s) {
  Term x = s.walk(a);
  Term y = s.walk(b);
  if (x.is_variable()) {
    if (!s.bind(x.text(), y)) return std::nullopt;
    return s;
  }
  if (y.is_variable()) {
    if (!s.bind(y.text(), x)) return std::nullopt;
    return s;
  }
  if (x.kind() != y.kind()) return std::nullopt;
  switch (x.kind()) {
    case TermKind::atom:
      return x.text() == y.text() ? std::optional(s) : std::nullopt;
    case TermKind::number:
      return x.value() == y.value() ? std::optional(s) : std::nullopt;
    case TermKind::compound:
      if (x.text() != y.text()) return std::nullopt;
      [[fallthrough]];
    case TermKind::list: {
      if (x.args().size() != y.args().size()) return std::nullopt;
      for (std::size_t i = 0; i < x.args().size(); ++i) {
        auto next = unify(x.args()[i], y.args()[i], std::move(s));
        if (!next) return std::nullopt;
        s = std::move(*next);
      }
      return s;
    }
    default:
      return std::nullopt;
  }
}

std::optional<Substitution> unify(const Literal& a, const Literal& b, Substitution s) {
  if (a.classical_neg != b.classical_neg || a.predicate != b.predicate ||
      a.args.size() != b.args.size()) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    auto next = unify(a.args[i], b.args[i], std::move(s));
    if (!next) return std::nullopt;
    s = std::move(*next);
  }
  return s;
}

}  // namespace caseforge
