#include "caseforge/checks.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "caseforge/parser.hpp"
#include "caseforge/printer.hpp"
#include "caseforge/translator.hpp"

namespace caseforge {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lowercased(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const std::set<std::string>& reserved_predicates() {
  static const std::set<std::string> preds = {
      "claimStmt", "evidenceStmt", "side_ClaimStmt", "defeater",
      "defeated",  "unresolved_defeater", "theory", "claim"};
  return preds;
}

// Objects the adequacy blame search may ground a rule with: atoms in the
// first argument position of any property literal of the program.
std::vector<std::string> candidate_objects(const Program& p) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto note = [&](const Literal& lit) {
    if (reserved_predicates().count(lit.predicate)) return;
    if (lit.args.empty() || !lit.args.front().is_atom()) return;
    const std::string& atom = lit.args.front().text();
    if (seen.insert(atom).second) out.push_back(atom);
  };
  for (const Rule& r : p.rules) {
    if (r.head) note(*r.head);
    for (const BodyElement& e : r.body) note(e.lit);
  }
  return out;
}

std::string first_variable(const std::vector<Literal>& body) {
  for (const Literal& lit : body) {
    std::set<std::string> vars;
    lit.collect_variables(vars);
    if (!vars.empty()) {
      // first by occurrence within this literal
      std::function<std::optional<std::string>(const Term&)> find =
          [&](const Term& t) -> std::optional<std::string> {
        if (t.is_variable()) return t.text();
        for (const Term& a : t.args()) {
          if (auto v = find(a)) return v;
        }
        return std::nullopt;
      };
      for (const Term& a : lit.args) {
        if (auto v = find(a)) return *v;
      }
    }
  }
  return "";
}

Verdict constraint_check(const std::string& name, const AssuranceCase& c, const Program& rules,
                         const SolveOptions& opts) {
  if (rules.rules.empty()) {
    throw CheckError("no " + name + " rules provided");
  }
  Program program = analysis_program(c);
  std::vector<ConstraintViolation> violations = check_constraints(program, rules, opts);
  Verdict v;
  v.check_name = name;
  v.passed = violations.empty();
  for (ConstraintViolation& violation : violations) {
    v.witnesses.push_back(violation.witness);
    for (const BodyElement& e : violation.constraint.body) {
      if (!e.naf) v.blamed.push_back(violation.witness.apply(e.lit));
    }
    if (!v.justification) v.justification = std::move(violation.justification);
  }
  if (!v.passed) {
    v.detail = std::to_string(violations.size()) + " constraint violation(s)";
  }
  return v;
}

}  // namespace

SemanticRuleSet parse_rule_set(const std::string& text) {
  SemanticRuleSet rules;
  enum class Section { none, consistency, adequacy, completeness, harmony };
  Section section = Section::none;
  std::string consistency_text;
  std::string harmony_text;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.rfind("%%", 0) == 0) {
      std::string name = trim(line.substr(2));
      if (name == "consistency") section = Section::consistency;
      else if (name == "adequacy") section = Section::adequacy;
      else if (name == "completeness") section = Section::completeness;
      else if (name == "harmony") section = Section::harmony;
      else throw CheckError("line " + std::to_string(line_no) + ": unknown section '" + name + "'");
      continue;
    }
    if (line.empty() || line[0] == '%') continue;
    switch (section) {
      case Section::none:
        throw CheckError("line " + std::to_string(line_no) + ": content before a %% section");
      case Section::consistency:
        consistency_text += raw + "\n";
        break;
      case Section::harmony:
        harmony_text += raw + "\n";
        break;
      case Section::adequacy: {
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
          throw CheckError("line " + std::to_string(line_no) + ": adequacy entry needs 'name: body'");
        }
        AdequacyRule rule;
        rule.name = trim(line.substr(0, colon));
        if (!is_atom_name(rule.name)) {
          throw CheckError("line " + std::to_string(line_no) + ": rule name must be an atom");
        }
        Query body = parse_query(line.substr(colon + 1));
        for (const BodyElement& e : body.elements) {
          if (e.naf) {
            throw CheckError("line " + std::to_string(line_no) +
                             ": adequacy bodies are positive conjunctions");
          }
          rule.body.push_back(e.lit);
        }
        rules.adequacy.push_back(std::move(rule));
        break;
      }
      case Section::completeness: {
        std::size_t colon = line.find(':');
        std::size_t arrow = line.find("=>");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
          throw CheckError("line " + std::to_string(line_no) +
                           ": completeness entry needs 'name: type => property'");
        }
        CompletenessRule rule;
        rule.name = trim(line.substr(0, colon));
        rule.type_name = trim(line.substr(colon + 1, arrow - colon - 1));
        rule.property = trim(line.substr(arrow + 2));
        if (!is_atom_name(rule.name) || !is_atom_name(rule.type_name) ||
            !is_atom_name(rule.property)) {
          throw CheckError("line " + std::to_string(line_no) +
                           ": completeness names must be atoms");
        }
        rules.completeness.push_back(std::move(rule));
        break;
      }
    }
  }

  auto parse_constraints = [](const std::string& section_text, const std::string& what) {
    Program p = parse_program(section_text);
    for (const Rule& r : p.rules) {
      if (!r.is_constraint()) {
        throw CheckError(what + " rules must be headless constraints: " + render_rule(r));
      }
    }
    return p;
  };
  if (!consistency_text.empty()) rules.consistency = parse_constraints(consistency_text, "consistency");
  if (!harmony_text.empty()) rules.harmony = parse_constraints(harmony_text, "harmony");
  return rules;
}

SemanticRuleSet load_rule_set_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckError("cannot open rules file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rule_set(buffer.str());
}

Verdict check_indefeasibility(const AssuranceCase& c, const SolveOptions& opts) {
  ExportBundle bundle = translate_case(c);
  Program program = analysis_program(c);

  SolveOptions first = opts;
  first.max_answers = 1;
  std::vector<Answer> answers = solve(program, bundle.positive_query, first);

  Verdict v;
  v.check_name = "indefeasibility";
  if (!answers.empty()) {
    v.passed = true;
    v.witnesses.push_back(answers.front().bindings);
    v.justification = std::move(answers.front().justification);
    return v;
  }
  v.passed = false;
  std::optional<Answer> negation = prove_negation(program, bundle.positive_query, opts);
  if (negation) {
    v.blamed = blamed_leaves(negation->justification);
    v.justification = std::move(negation->justification);
  }
  v.detail = "top-level claim is not derivable";
  return v;
}

Verdict check_theory_application(const AssuranceCase& c) {
  Verdict v;
  v.check_name = "theory-application";
  v.passed = true;

  std::set<std::pair<std::string, std::string>> declared;
  for (const auto& [atom, type] : c.vocabulary().instances) declared.insert({atom, type});

  for (const Node& n : c.nodes()) {
    if (!n.theory_ref) continue;
    const TheoryApplication& app = *n.theory_ref;
    if (!c.has_node(app.theory_id) || c.node(app.theory_id).kind != NodeKind::theory_claim) {
      throw CheckError("theory_ref of '" + n.id + "' names non-theory node '" + app.theory_id + "'");
    }
    std::set<std::string> vars = theory_variables(c, app.theory_id);
    std::set<std::string> domain;
    for (const auto& [var, atom] : app.binding) domain.insert(var);
    if (vars != domain) {
      throw CheckError("binding domain mismatch for theory '" + app.theory_id + "' applied at '" +
                       n.id + "'");
    }

    for (const auto& [app_id, theory_id] : app.node_correspondence) {
      if (!c.has_node(app_id) || !c.has_node(theory_id)) {
        v.passed = false;
        v.detail += (v.detail.empty() ? "" : "; ");
        v.detail += "correspondence names unknown node " + app_id + " -> " + theory_id;
        v.blamed.push_back(make_literal("node_correspondence",
                                        {Term::atom(app_id), Term::atom(theory_id)}));
        continue;
      }
      const Node& app_node = c.node(app_id);
      const Node& theory_node = c.node(theory_id);
      if (app_node.ope.properties != theory_node.ope.properties) {
        v.passed = false;
        v.detail += (v.detail.empty() ? "" : "; ");
        v.detail += "property mismatch at " + app_id + " -> " + theory_id + ": [";
        for (std::size_t i = 0; i < app_node.ope.properties.size(); ++i) {
          if (i) v.detail += ",";
          v.detail += app_node.ope.properties[i];
        }
        v.detail += "] vs [";
        for (std::size_t i = 0; i < theory_node.ope.properties.size(); ++i) {
          if (i) v.detail += ",";
          v.detail += theory_node.ope.properties[i];
        }
        v.detail += "]";
        std::vector<Term> objects;
        for (const std::string& o : app_node.ope.objects) {
          if (!is_variable_name(o)) objects.push_back(Term::atom(o));
        }
        const std::vector<std::string>& expected = theory_node.ope.properties;
        const std::vector<std::string>& got = app_node.ope.properties;
        std::string prop;
        for (std::size_t i = 0; i < std::max(expected.size(), got.size()); ++i) {
          if (i >= expected.size()) { prop = got[i]; break; }
          if (i >= got.size() || expected[i] != got[i]) { prop = expected[i]; break; }
        }
        if (!prop.empty()) v.blamed.push_back(make_literal(prop, objects));
      }
    }

    for (const auto& [var, atom] : app.binding) {
      std::string type = lowercased(var);
      if (!declared.count({atom, type})) {
        v.passed = false;
        v.detail += (v.detail.empty() ? "" : "; ");
        v.detail += "undeclared instance: '" + atom + "' is not a declared instance of type '" +
                    type + "' for variable " + var;
        v.blamed.push_back(make_literal("instance_of", {Term::atom(atom), Term::atom(type)}));
      }
    }
  }
  return v;
}

Verdict check_consistency(const AssuranceCase& c, const SemanticRuleSet& rules,
                          const SolveOptions& opts) {
  return constraint_check("consistency", c, rules.consistency, opts);
}

Verdict check_theory_harmony(const AssuranceCase& c, const SemanticRuleSet& rules,
                             const SolveOptions& opts) {
  return constraint_check("harmony", c, rules.harmony, opts);
}

std::vector<Verdict> check_adequacy(const AssuranceCase& c, const SemanticRuleSet& rules,
                                    const SolveOptions& opts) {
  Program program = analysis_program(c);
  std::vector<std::string> candidates = candidate_objects(program);
  std::vector<Verdict> out;

  for (const AdequacyRule& rule : rules.adequacy) {
    Verdict v;
    v.check_name = "adequacy/" + rule.name;
    Query q;
    for (const Literal& lit : rule.body) q.elements.push_back({false, lit});
    std::vector<Answer> answers = solve(program, q, opts);
    if (!answers.empty()) {
      v.passed = true;
      std::set<Substitution> seen;
      for (const Answer& a : answers) {
        if (seen.insert(a.bindings).second) v.witnesses.push_back(a.bindings);
      }
      v.justification = answers.front().justification;
      out.push_back(std::move(v));
      continue;
    }

    v.passed = false;
    std::string var = first_variable(rule.body);
    SolveOptions one = opts;
    one.max_answers = 1;

    // Ground the rule over each candidate and keep the one that gets
    // furthest; its first failing property is the blame.
    std::size_t best_count = 0;
    std::optional<Literal> best_missing;
    auto attempt = [&](Substitution seed) {
      std::size_t count = 0;
      Substitution cur = std::move(seed);
      for (const Literal& lit : rule.body) {
        Query single;
        single.elements.push_back({false, cur.apply(lit)});
        std::vector<Answer> found = solve(program, single, one);
        if (found.empty()) return std::make_pair(count, std::optional<Literal>(cur.apply(lit)));
        // fold the answer's bindings into the running substitution
        for (const auto& [bvar, bterm] : found.front().bindings.bindings()) cur.bind(bvar, bterm);
        ++count;
      }
      return std::make_pair(count, std::optional<Literal>());
    };

    if (var.empty() || candidates.empty()) {
      auto [count, missing] = attempt(Substitution{});
      best_count = count;
      best_missing = missing;
    } else {
      bool first_candidate = true;
      for (const std::string& atom : candidates) {
        Substitution seed;
        seed.bind(var, Term::atom(atom));
        auto [count, missing] = attempt(std::move(seed));
        if (first_candidate || count > best_count) {
          best_count = count;
          best_missing = missing;
          first_candidate = false;
        }
      }
    }
    if (best_missing) {
      v.blamed.push_back(*best_missing);
      Query missing_q;
      missing_q.elements.push_back({false, *best_missing});
      if (auto negation = prove_negation(program, missing_q, opts)) {
        v.justification = std::move(negation->justification);
      }
      v.detail = "missing " + render_literal(*best_missing);
    } else {
      v.detail = "no candidate object satisfies the rule";
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Verdict> check_completeness(const AssuranceCase& c, const SemanticRuleSet& rules,
                                        const SolveOptions& opts) {
  Program base = analysis_program(c);
  std::set<std::string> types(c.vocabulary().object_types.begin(),
                              c.vocabulary().object_types.end());
  std::vector<Verdict> out;

  for (const CompletenessRule& rule : rules.completeness) {
    if (!types.count(rule.type_name)) {
      throw CheckError("completeness rule '" + rule.name + "' uses undeclared type '" +
                       rule.type_name + "'");
    }
    Program scratch = base;
    std::string type_pred = "typefact_" + rule.type_name;
    for (const auto& [atom, type] : c.vocabulary().instances) {
      if (type != rule.type_name) continue;
      Rule fact;
      fact.head = make_literal(type_pred, {Term::atom(atom)});
      scratch.rules.push_back(std::move(fact));
    }
    std::string incomplete_pred = "incomplete_" + rule.name;
    Rule detector;
    detector.head = make_literal(incomplete_pred, {Term::var("X")});
    detector.body.push_back({false, make_literal(type_pred, {Term::var("X")})});
    detector.body.push_back({true, make_literal(rule.property, {Term::var("X")})});
    scratch.rules.push_back(std::move(detector));

    Query q;
    q.elements.push_back({false, make_literal(incomplete_pred, {Term::var("X")})});
    SolveOptions all = opts;
    all.max_answers = kAllAnswers;
    std::vector<Answer> answers = solve(scratch, q, all);

    Verdict v;
    v.check_name = "completeness/" + rule.name;
    v.passed = answers.empty();
    std::set<Substitution> seen;
    for (Answer& a : answers) {
      if (!seen.insert(a.bindings).second) continue;
      v.witnesses.push_back(a.bindings);
      Term witness = a.bindings.apply(Term::var("X"));
      v.blamed.push_back(make_literal(rule.property, {witness}));
      if (!v.justification) v.justification = std::move(a.justification);
    }
    if (!v.passed) {
      v.detail = std::to_string(v.witnesses.size()) + " instance(s) of '" + rule.type_name +
                 "' lack '" + rule.property + "'";
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace caseforge
