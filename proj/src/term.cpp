#include "caseforge/term.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace caseforge {

bool is_atom_name(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_variable_name(const std::string& s) {
  if (s.empty()) return false;
  if (!((s[0] >= 'A' && s[0] <= 'Z') || s[0] == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

Term Term::atom(std::string name) {
  Term t;
  t.kind_ = TermKind::atom;
  t.text_ = std::move(name);
  return t;
}

Term Term::var(std::string name) {
  Term t;
  t.kind_ = TermKind::variable;
  t.text_ = std::move(name);
  return t;
}

Term Term::number(std::int64_t value) {
  Term t;
  t.kind_ = TermKind::number;
  t.value_ = value;
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind_ = TermKind::compound;
  t.text_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

Term Term::list(std::vector<Term> elements) {
  Term t;
  t.kind_ = TermKind::list;
  t.args_ = std::move(elements);
  return t;
}

bool Term::is_ground() const {
  if (kind_ == TermKind::variable) return false;
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& t) { return t.is_ground(); });
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind_ == TermKind::variable) {
    out.insert(text_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

bool Term::operator==(const Term& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case TermKind::atom:
    case TermKind::variable:
      return text_ == other.text_;
    case TermKind::number:
      return value_ == other.value_;
    case TermKind::compound:
      return text_ == other.text_ && args_ == other.args_;
    case TermKind::list:
      return args_ == other.args_;
  }
  return false;
}

bool Term::operator<(const Term& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (text_ != other.text_) return text_ < other.text_;
  if (value_ != other.value_) return value_ < other.value_;
  return std::lexicographical_compare(args_.begin(), args_.end(),
                                      other.args_.begin(), other.args_.end());
}

bool Literal::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_ground(); });
}

void Literal::collect_variables(std::set<std::string>& out) const {
  for (const Term& a : args) a.collect_variables(out);
}

bool Literal::operator==(const Literal& other) const {
  return classical_neg == other.classical_neg && predicate == other.predicate &&
         args == other.args;
}

bool Literal::operator<(const Literal& other) const {
  if (classical_neg != other.classical_neg) return classical_neg < other.classical_neg;
  if (predicate != other.predicate) return predicate < other.predicate;
  return std::lexicographical_compare(args.begin(), args.end(),
                                      other.args.begin(), other.args.end());
}

Literal make_literal(std::string predicate, std::vector<Term> args) {
  return Literal{false, std::move(predicate), std::move(args)};
}

Literal make_neg_literal(std::string predicate, std::vector<Term> args) {
  return Literal{true, std::move(predicate), std::move(args)};
}

void Rule::collect_variables(std::set<std::string>& out) const {
  if (head) head->collect_variables(out);
  for (const BodyElement& e : body) e.lit.collect_variables(out);
}

void Query::collect_variables(std::set<std::string>& out) const {
  for (const BodyElement& e : elements) e.lit.collect_variables(out);
}

std::vector<std::string> unsafe_variables(const Rule& r) {
  std::set<std::string> bound;
  for (const BodyElement& e : r.body) {
    if (!e.naf) e.lit.collect_variables(bound);
  }
  std::set<std::string> needed;
  if (r.head) r.head->collect_variables(needed);
  for (const BodyElement& e : r.body) {
    if (e.naf) e.lit.collect_variables(needed);
  }
  std::vector<std::string> out;
  for (const std::string& v : needed) {
    if (!bound.count(v)) out.push_back(v);
  }
  return out;
}

std::vector<SafetyViolation> safety_violations(const Program& p) {
  std::vector<SafetyViolation> out;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    for (const std::string& v : unsafe_variables(p.rules[i])) {
      out.push_back({i, v});
    }
  }
  return out;
}

std::string predicate_key(const Literal& lit) {
  std::string key = lit.classical_neg ? "-" : "";
  key += lit.predicate;
  key += '/';
  key += std::to_string(lit.args.size());
  return key;
}

Program with_classical_consistency(Program p) {
  // name/arity -> signs seen
  std::map<std::pair<std::string, std::size_t>, std::pair<bool, bool>> seen;
  auto note = [&](const Literal& lit) {
    auto& signs = seen[{lit.predicate, lit.args.size()}];
    (lit.classical_neg ? signs.second : signs.first) = true;
  };
  for (const Rule& r : p.rules) {
    if (r.head) note(*r.head);
    for (const BodyElement& e : r.body) note(e.lit);
  }
  for (const auto& [sig, signs] : seen) {
    if (!signs.first || !signs.second) continue;
    std::vector<Term> vars;
    for (std::size_t i = 0; i < sig.second; ++i) {
      vars.push_back(Term::var("X" + std::to_string(i + 1)));
    }
    Rule constraint;
    constraint.body.push_back({false, make_literal(sig.first, vars)});
    constraint.body.push_back({false, make_neg_literal(sig.first, vars)});
    p.rules.push_back(std::move(constraint));
  }
  return p;
}

}  // namespace caseforge
