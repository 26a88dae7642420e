#include "caseforge/oracle.hpp"

#include <algorithm>
#include <map>

#include "caseforge/engine.hpp"
#include "caseforge/printer.hpp"
#include "caseforge/substitution.hpp"

namespace caseforge {

namespace {

void collect_ground_constants(const Term& t, std::vector<Term>& pool, std::set<Term>& seen) {
  if (t.is_ground()) {
    if (seen.insert(t).second) pool.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_ground_constants(a, pool, seen);
}

// All groundings of `r` with variables drawn from the constant pool.
void ground_rule(const Rule& r, const std::vector<Term>& pool, std::vector<Rule>& out) {
  std::set<std::string> var_set;
  r.collect_variables(var_set);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  if (vars.empty()) {
    out.push_back(r);
    return;
  }
  if (pool.empty()) return;
  std::vector<std::size_t> choice(vars.size(), 0);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], pool[choice[i]]);
    out.push_back(s.apply(r));
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++choice[i] < pool.size()) break;
      choice[i] = 0;
    }
    if (i == vars.size()) break;
  }
}

std::set<Literal> least_model(const std::vector<Rule>& reduct) {
  std::set<Literal> model;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : reduct) {
      if (!r.head) continue;
      bool fires = std::all_of(r.body.begin(), r.body.end(), [&](const BodyElement& e) {
        return model.count(e.lit) > 0;
      });
      if (fires && model.insert(*r.head).second) changed = true;
    }
  }
  return model;
}

}  // namespace

std::vector<std::set<Literal>> brute_force_stable_models(const Program& p,
                                                         std::size_t atom_budget) {
  std::vector<Term> pool;
  std::set<Term> seen_terms;
  for (const Rule& r : p.rules) {
    if (r.head) {
      for (const Term& a : r.head->args) collect_ground_constants(a, pool, seen_terms);
    }
    for (const BodyElement& e : r.body) {
      for (const Term& a : e.lit.args) collect_ground_constants(a, pool, seen_terms);
    }
  }

  std::vector<Rule> ground;
  for (const Rule& r : p.rules) ground_rule(r, pool, ground);

  std::set<Literal> atom_set;
  std::vector<Literal> candidates;  // head atoms, first-occurrence order
  std::set<Literal> candidate_set;
  for (const Rule& r : ground) {
    if (r.head) {
      atom_set.insert(*r.head);
      if (candidate_set.insert(*r.head).second) candidates.push_back(*r.head);
    }
    for (const BodyElement& e : r.body) atom_set.insert(e.lit);
  }
  if (atom_set.size() > atom_budget) {
    throw EvalError("atom budget exceeded: " + std::to_string(atom_set.size()) + " > " +
                    std::to_string(atom_budget));
  }
  if (candidates.size() >= 63) {
    throw EvalError("too many candidate atoms for subset enumeration");
  }

  std::vector<std::set<Literal>> models;
  std::uint64_t limit = std::uint64_t{1} << candidates.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::set<Literal> m;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) m.insert(candidates[i]);
    }

    bool contradictory = false;
    for (const Literal& lit : m) {
      if (!lit.classical_neg) continue;
      Literal pos = lit;
      pos.classical_neg = false;
      if (m.count(pos)) {
        contradictory = true;
        break;
      }
    }
    if (contradictory) continue;

    // Gelfond-Lifschitz reduct with respect to m.
    std::vector<Rule> reduct;
    bool constraint_violated = false;
    for (const Rule& r : ground) {
      bool dropped = false;
      Rule positive;
      positive.head = r.head;
      for (const BodyElement& e : r.body) {
        if (e.naf) {
          if (m.count(e.lit)) {
            dropped = true;
            break;
          }
        } else {
          positive.body.push_back(e);
        }
      }
      if (dropped) continue;
      if (!r.head) {
        bool satisfied = std::all_of(positive.body.begin(), positive.body.end(),
                                     [&](const BodyElement& e) { return m.count(e.lit) > 0; });
        if (satisfied) {
          constraint_violated = true;
          break;
        }
        continue;
      }
      reduct.push_back(std::move(positive));
    }
    if (constraint_violated) continue;
    if (least_model(reduct) == m) models.push_back(std::move(m));
  }
  return models;
}

}  // namespace caseforge
