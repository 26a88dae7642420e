#include "caseforge/engine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "caseforge/printer.hpp"

namespace caseforge {

namespace {

// Variables are renamed apart per rule use as "_R<k>_<name>"; strip the
// prefix again for display so justifications read like the source.
std::string display_var_name(const std::string& name) {
  if (name.rfind("_R", 0) != 0) return name;
  std::size_t i = 2;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
  if (i == 2 || i >= name.size() || name[i] != '_') return name;
  return name.substr(i + 1);
}

Term display_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::variable:
      return Term::var(display_var_name(t.text()));
    case TermKind::compound: {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(display_term(a));
      return Term::compound(t.text(), std::move(args));
    }
    case TermKind::list: {
      std::vector<Term> elems;
      for (const Term& a : t.args()) elems.push_back(display_term(a));
      return Term::list(std::move(elems));
    }
    default:
      return t;
  }
}

Literal display_literal(Literal lit) {
  for (Term& a : lit.args) a = display_term(a);
  return lit;
}

Term rename_term(const Term& t, const std::string& prefix) {
  switch (t.kind()) {
    case TermKind::variable:
      return Term::var(prefix + t.text());
    case TermKind::compound: {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(rename_term(a, prefix));
      return Term::compound(t.text(), std::move(args));
    }
    case TermKind::list: {
      std::vector<Term> elems;
      for (const Term& a : t.args()) elems.push_back(rename_term(a, prefix));
      return Term::list(std::move(elems));
    }
    default:
      return t;
  }
}

Literal rename_literal(Literal lit, const std::string& prefix) {
  for (Term& a : lit.args) a = rename_term(a, prefix);
  return lit;
}

Term canonical_term(const Term& t, std::map<std::string, std::string>& names) {
  switch (t.kind()) {
    case TermKind::variable: {
      auto it = names.find(t.text());
      if (it == names.end()) {
        it = names.emplace(t.text(), "V" + std::to_string(names.size() + 1)).first;
      }
      return Term::var(it->second);
    }
    case TermKind::compound: {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(canonical_term(a, names));
      return Term::compound(t.text(), std::move(args));
    }
    case TermKind::list: {
      std::vector<Term> elems;
      for (const Term& a : t.args()) elems.push_back(canonical_term(a, names));
      return Term::list(std::move(elems));
    }
    default:
      return t;
  }
}

// Equal up to variable renaming, for the loop check.
Literal canonical_literal(Literal lit) {
  std::map<std::string, std::string> names;
  for (Term& a : lit.args) a = canonical_term(a, names);
  return lit;
}

void apply_to_tree(JustificationTree& tree, const Substitution& s) {
  tree.literal = display_literal(s.apply(tree.literal));
  for (JustificationTree& c : tree.children) apply_to_tree(c, s);
}

void collect_model(const JustificationTree& tree, std::set<Literal>& out) {
  if (tree.status == ProofStatus::proved && !tree.naf && tree.literal.is_ground()) {
    out.insert(tree.literal);
  }
  for (const JustificationTree& c : tree.children) collect_model(c, out);
}

std::string sign_name(const Literal& lit) {
  return (lit.classical_neg ? "-" : "") + lit.predicate;
}

class Solver {
public:
  Solver(const Program& p, const SolveOptions& opts) : program_(p), opts_(opts) {
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
      if (p.rules[i].head) {
        index_[predicate_key(*p.rules[i].head)].push_back(i);
      }
    }
  }

  std::vector<Answer> run(const Query& q) {
    std::set<std::string> qvars;
    q.collect_variables(qvars);
    std::vector<Answer> answers;
    std::vector<JustificationTree> children(q.elements.size());
    prove_body(q.elements, eval_order(q.elements), 0, Substitution{}, 0, children,
               [&](const Substitution& s, std::vector<JustificationTree>&& subtrees) {
                 Answer a;
                 a.bindings = s.restricted_to(qvars);
                 a.justification = assemble_query_tree(q, std::move(subtrees), s);
                 std::set<Literal> model;
                 collect_model(a.justification, model);
                 a.model.assign(model.begin(), model.end());
                 answers.push_back(std::move(a));
                 return opts_.max_answers == kAllAnswers || answers.size() < opts_.max_answers;
               });
    return answers;
  }

  std::optional<Answer> run_negation(const Query& q) {
    if (q.elements.size() != 1 || q.elements[0].naf) {
      throw EvalError("negation query must be a single positive literal");
    }
    const Literal& lit = q.elements[0].lit;
    if (first_answer(lit, Substitution{}, 0)) return std::nullopt;
    Answer a;
    JustificationTree root;
    root.naf = true;
    root.literal = display_literal(lit);
    root.status = ProofStatus::naf_holds;
    root.children.push_back(explain(lit, Substitution{}, 0));
    a.justification = std::move(root);
    return a;
  }

  JustificationTree explain(const Literal& goal, const Substitution& s, std::size_t depth) {
    check_depth(depth);
    Literal goal_applied = s.apply(goal);
    JustificationTree node;
    node.literal = display_literal(goal_applied);
    node.status = ProofStatus::failed;

    Literal canon = canonical_literal(goal_applied);
    for (const Literal& anc : explain_stack_) {
      if (anc == canon) {
        node.note = "variant loop";
        return node;
      }
    }
    explain_stack_.push_back(canon);

    bool any_applicable = false;
    auto it = index_.find(predicate_key(goal_applied));
    if (it != index_.end()) {
      for (std::size_t rule_idx : it->second) {
        Rule fresh = rename_rule(program_.rules[rule_idx]);
        auto s2 = unify(goal_applied, *fresh.head, s);
        if (!s2) continue;
        any_applicable = true;
        Substitution cur = std::move(*s2);
        for (std::size_t pos : eval_order(fresh.body)) {
          const BodyElement& e = fresh.body[pos];
          if (!e.naf) {
            auto found = first_answer(e.lit, cur, depth + 1);
            if (found) {
              cur = std::move(found->first);
              continue;
            }
            node.children.push_back(explain(e.lit, cur, depth + 1));
            break;
          }
          Literal lit_a = cur.apply(e.lit);
          if (!lit_a.is_ground()) {
            throw EvalError("NAF call on non-ground literal: not " + render_literal(lit_a));
          }
          auto proof = first_answer(lit_a, Substitution{}, depth + 1);
          if (proof) {
            JustificationTree nf;
            nf.naf = true;
            nf.literal = display_literal(lit_a);
            nf.status = ProofStatus::naf_fails;
            nf.children.push_back(std::move(proof->second));
            node.children.push_back(std::move(nf));
            break;
          }
        }
      }
    }
    explain_stack_.pop_back();
    if (!any_applicable) node.note = "no matching clause";
    return node;
  }

private:
  using BodyYield = std::function<bool(const Substitution&, std::vector<JustificationTree>&&)>;
  using Yield = std::function<bool(const Substitution&, JustificationTree&&)>;

  void check_depth(std::size_t depth) const {
    if (depth > opts_.depth_limit) {
      throw EvalError("depth limit exceeded (" + std::to_string(opts_.depth_limit) + ")");
    }
  }

  static std::vector<std::size_t> eval_order(const std::vector<BodyElement>& body) {
    std::vector<std::size_t> order;
    order.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!body[i].naf) order.push_back(i);
    }
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i].naf) order.push_back(i);
    }
    return order;
  }

  Rule rename_rule(const Rule& r) {
    std::string prefix = "_R" + std::to_string(++fresh_counter_) + "_";
    Rule out;
    if (r.head) out.head = rename_literal(*r.head, prefix);
    out.body.reserve(r.body.size());
    for (const BodyElement& e : r.body) {
      out.body.push_back({e.naf, rename_literal(e.lit, prefix)});
    }
    return out;
  }

  // Enumerates proofs of `goal` under `s`; returns false when the consumer
  // stopped the search.
  bool prove(const Literal& goal, const Substitution& s, std::size_t depth, const Yield& yield) {
    check_depth(depth);
    Literal goal_applied = s.apply(goal);
    Literal canon = canonical_literal(goal_applied);
    for (const Literal& anc : stack_) {
      if (anc == canon) return true;  // variant loop: fail this branch
    }
    auto it = index_.find(predicate_key(goal_applied));
    if (it == index_.end()) return true;
    stack_.push_back(canon);
    bool keep_going = true;
    for (std::size_t rule_idx : it->second) {
      Rule fresh = rename_rule(program_.rules[rule_idx]);
      auto s2 = unify(goal_applied, *fresh.head, s);
      if (!s2) continue;
      std::vector<JustificationTree> children(fresh.body.size());
      keep_going = prove_body(
          fresh.body, eval_order(fresh.body), 0, *s2, depth + 1, children,
          [&](const Substitution& s3, std::vector<JustificationTree>&& subtrees) {
            JustificationTree node;
            node.literal = display_literal(s3.apply(goal_applied));
            node.status = ProofStatus::proved;
            node.rule_index = rule_idx;
            node.children = std::move(subtrees);
            for (JustificationTree& c : node.children) apply_to_tree(c, s3);
            return yield(s3, std::move(node));
          });
      if (!keep_going) break;
    }
    stack_.pop_back();
    return keep_going;
  }

  bool prove_body(const std::vector<BodyElement>& body, const std::vector<std::size_t>& order,
                  std::size_t k, const Substitution& s, std::size_t depth,
                  std::vector<JustificationTree>& children, const BodyYield& yield) {
    if (k == order.size()) {
      std::vector<JustificationTree> done = children;
      return yield(s, std::move(done));
    }
    std::size_t pos = order[k];
    const BodyElement& e = body[pos];
    if (!e.naf) {
      return prove(e.lit, s, depth, [&](const Substitution& s2, JustificationTree&& subtree) {
        children[pos] = std::move(subtree);
        return prove_body(body, order, k + 1, s2, depth, children, yield);
      });
    }
    Literal lit_a = s.apply(e.lit);
    if (!lit_a.is_ground()) {
      throw EvalError("NAF call on non-ground literal: not " + render_literal(lit_a));
    }
    auto proof = first_answer(lit_a, Substitution{}, depth + 1);
    if (proof) return true;  // `not L` fails; backtrack
    JustificationTree holds;
    holds.naf = true;
    holds.literal = display_literal(lit_a);
    holds.status = ProofStatus::naf_holds;
    holds.children.push_back(explain(lit_a, Substitution{}, depth + 1));
    children[pos] = std::move(holds);
    return prove_body(body, order, k + 1, s, depth, children, yield);
  }

  // First proof of `goal`, searched on a fresh goal stack.
  std::optional<std::pair<Substitution, JustificationTree>> first_answer(
      const Literal& goal, const Substitution& s, std::size_t depth) {
    std::vector<Literal> saved_stack;
    saved_stack.swap(stack_);
    std::optional<std::pair<Substitution, JustificationTree>> out;
    prove(goal, s, depth, [&](const Substitution& s2, JustificationTree&& tree) {
      out.emplace(s2, std::move(tree));
      return false;
    });
    saved_stack.swap(stack_);
    return out;
  }

  JustificationTree assemble_query_tree(const Query& q, std::vector<JustificationTree>&& subtrees,
                                        const Substitution& s) {
    for (JustificationTree& t : subtrees) apply_to_tree(t, s);
    if (subtrees.size() == 1) return std::move(subtrees[0]);
    JustificationTree root;
    root.literal = make_literal("query");
    root.status = ProofStatus::proved;
    root.children = std::move(subtrees);
    (void)q;
    return root;
  }

  const Program& program_;
  SolveOptions opts_;
  std::map<std::string, std::vector<std::size_t>> index_;
  std::vector<Literal> stack_;
  std::vector<Literal> explain_stack_;
  std::size_t fresh_counter_ = 0;
};

void require_solvable(const Program& p) {
  StratifyResult strat = stratify(p);
  if (!strat.stratified) {
    std::string names;
    for (const std::string& pred : strat.cycle) {
      if (!names.empty()) names += ", ";
      names += pred;
    }
    throw EvalError("program is not stratified: negative cycle through [" + names + "]");
  }
  auto unsafe = safety_violations(p);
  if (!unsafe.empty()) {
    throw EvalError("unsafe rule " + std::to_string(unsafe.front().rule_index + 1) +
                    ": variable " + unsafe.front().variable +
                    " has no positive occurrence in the body");
  }
}

}  // namespace

std::size_t JustificationTree::node_count() const {
  std::size_t n = 1;
  for (const JustificationTree& c : children) n += c.node_count();
  return n;
}

StratifyResult stratify(const Program& p) {
  std::vector<std::string> preds;
  std::map<std::string, std::size_t> pred_index;
  auto intern = [&](const Literal& lit) {
    std::string name = sign_name(lit);
    auto [it, inserted] = pred_index.emplace(name, preds.size());
    if (inserted) preds.push_back(name);
    return it->second;
  };
  struct Edge {
    std::size_t from, to;
    bool negative;
  };
  std::vector<Edge> edges;
  for (const Rule& r : p.rules) {
    if (!r.head) continue;
    std::size_t h = intern(*r.head);
    for (const BodyElement& e : r.body) {
      edges.push_back({h, intern(e.lit), e.naf});
    }
  }
  // Also intern predicates only mentioned in constraints so they get strata.
  for (const Rule& r : p.rules) {
    if (!r.head) {
      for (const BodyElement& e : r.body) intern(e.lit);
    }
  }

  StratifyResult result;
  std::vector<int> stratum(preds.size(), 0);
  bool changed = true;
  std::size_t pass = 0;
  while (changed && pass <= preds.size() + 1) {
    changed = false;
    ++pass;
    for (const Edge& e : edges) {
      int need = stratum[e.to] + (e.negative ? 1 : 0);
      if (stratum[e.from] < need) {
        stratum[e.from] = need;
        changed = true;
      }
    }
  }
  if (!changed) {
    result.stratified = true;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      result.strata[preds[i]] = stratum[i];
    }
    return result;
  }

  // Witness: strongly connected component containing a negative edge.
  std::size_t n = preds.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : edges) adj[e.from].push_back(e.to);
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1), on_stack(n, 0);
  std::vector<std::size_t> order_stack;
  int counter = 0, comps = 0;
  std::function<void(std::size_t)> tarjan = [&](std::size_t v) {
    num[v] = low[v] = counter++;
    order_stack.push_back(v);
    on_stack[v] = 1;
    for (std::size_t w : adj[v]) {
      if (num[w] < 0) {
        tarjan(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      while (true) {
        std::size_t w = order_stack.back();
        order_stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (num[v] < 0) tarjan(v);
  }
  for (const Edge& e : edges) {
    if (e.negative && comp[e.from] == comp[e.to]) {
      for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] == comp[e.from]) result.cycle.push_back(preds[v]);
      }
      break;
    }
  }
  result.stratified = false;
  return result;
}

std::vector<Answer> solve(const Program& p, const Query& q, const SolveOptions& opts) {
  require_solvable(p);
  Solver solver(p, opts);
  return solver.run(q);
}

std::optional<Answer> prove_negation(const Program& p, const Query& q, const SolveOptions& opts) {
  require_solvable(p);
  Solver solver(p, opts);
  return solver.run_negation(q);
}

std::vector<ConstraintViolation> check_constraints(const Program& p, const Program& constraints,
                                                   const SolveOptions& opts) {
  require_solvable(p);
  std::vector<ConstraintViolation> out;
  SolveOptions all = opts;
  all.max_answers = kAllAnswers;
  for (const Rule& c : constraints.rules) {
    if (!c.is_constraint()) {
      throw EvalError("constraint program contains a headed rule: " + render_rule(c));
    }
    Query q;
    q.elements = c.body;
    std::set<Substitution> seen;
    Solver per_constraint(p, all);
    for (Answer& a : per_constraint.run(q)) {
      if (!seen.insert(a.bindings).second) continue;
      out.push_back({c, a.bindings, std::move(a.justification)});
    }
  }
  return out;
}

namespace {

void collect_fact_leaves(const JustificationTree& proof, std::vector<Literal>& out) {
  if (proof.status == ProofStatus::proved && proof.children.empty() && !proof.naf) {
    out.push_back(proof.literal);
    return;
  }
  for (const JustificationTree& c : proof.children) collect_fact_leaves(c, out);
}

void collect_blamed(const JustificationTree& tree, std::vector<Literal>& out) {
  switch (tree.status) {
    case ProofStatus::failed:
      if (tree.children.empty()) {
        out.push_back(tree.literal);
      } else {
        for (const JustificationTree& c : tree.children) collect_blamed(c, out);
      }
      break;
    case ProofStatus::naf_fails:
      for (const JustificationTree& c : tree.children) collect_fact_leaves(c, out);
      break;
    case ProofStatus::naf_holds:
      for (const JustificationTree& c : tree.children) collect_blamed(c, out);
      break;
    case ProofStatus::proved:
      collect_fact_leaves(tree, out);
      break;
  }
}

}  // namespace

std::vector<Literal> blamed_leaves(const JustificationTree& tree) {
  std::vector<Literal> raw;
  collect_blamed(tree, raw);
  std::vector<Literal> out;
  std::set<Literal> seen;
  for (Literal& lit : raw) {
    if (seen.insert(lit).second) out.push_back(std::move(lit));
  }
  return out;
}

}  // namespace caseforge
