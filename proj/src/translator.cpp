#include "caseforge/translator.hpp"

#include <algorithm>
#include <functional>

#include "caseforge/printer.hpp"
#include "caseforge/substitution.hpp"

namespace caseforge {

namespace {

const char* kApplicationVar = "Application";

Term term_for_identifier(const std::string& id) {
  return is_variable_name(id) ? Term::var(id) : Term::atom(id);
}

Term identifier_list(const std::vector<std::string>& ids) {
  std::vector<Term> terms;
  terms.reserve(ids.size());
  for (const std::string& id : ids) terms.push_back(term_for_identifier(id));
  return Term::list(std::move(terms));
}

// The k-th theory application in document order gets application(instance_k).
std::size_t instance_number(const AssuranceCase& c, const Node& node) {
  std::size_t k = 0;
  for (const Node& n : c.nodes()) {
    if (!n.theory_ref) continue;
    ++k;
    if (n.id == node.id) return k;
  }
  return k + 1;
}

// Theory definition roots: theory claims with no incoming support edge.
bool is_theory_root(const AssuranceCase& c, const Node& n) {
  if (n.kind != NodeKind::theory_claim) return false;
  return std::none_of(c.edges().begin(), c.edges().end(), [&](const Edge& e) {
    return e.child == n.id &&
           (e.kind == EdgeKind::supports || e.kind == EdgeKind::side_supports);
  });
}

std::set<std::string> template_node_ids(const AssuranceCase& c) {
  std::set<std::string> ids;
  for (const Node& n : c.nodes()) {
    if (!is_theory_root(c, n)) continue;
    for (const std::string& id : theory_subtree(c, n.id)) ids.insert(id);
  }
  return ids;
}

struct NodeContext {
  Term app_tag;
  bool in_template = false;
};

NodeContext node_context(const AssuranceCase& c, const Node& node,
                         const std::set<std::string>& templates) {
  if (templates.count(node.id)) return {Term::var(kApplicationVar), true};
  if (node.theory_ref) return {application_instance(instance_number(c, node)), false};
  return {application_none(), false};
}

Term claim_term(const Literal& head) {
  return Term::compound(head.predicate, head.args);
}

Literal statement_literal(const AssuranceCase& c, const Node& node,
                          const std::set<std::string>& templates) {
  NodeContext ctx = node_context(c, node, templates);
  PropertyExpansion exp = expand_claim_predicate(node, ctx.app_tag);
  Term id = Term::atom(node.id);
  Term head = claim_term(exp.head);
  Term desc = Term::atom(node.description);
  switch (node.kind) {
    case NodeKind::claim:
    case NodeKind::theory_claim:
      return make_literal("claimStmt", {id, ctx.app_tag, head, desc});
    case NodeKind::evidence:
      return make_literal("evidenceStmt", {id, ctx.app_tag, head,
                                           Term::atom(node.evidence ? node.evidence->artefact : ""),
                                           Term::atom(node.evidence ? node.evidence->uri : "")});
    case NodeKind::side_claim:
      return make_literal("side_ClaimStmt",
                          {id, ctx.app_tag, head,
                           Term::atom(node.justification_text.value_or(""))});
    case NodeKind::defeater:
      return make_literal("defeater", {id, ctx.app_tag,
                                       Term::compound("defeats", {Term::atom(node.defeats.value_or(""))}),
                                       head, desc});
    case NodeKind::argument:
      break;
  }
  throw TranslateError("argument nodes have no statement literal: '" + node.id + "'");
}

// Children in edge order, arguments flattened into their parents. A defeater
// on a flattened argument guards the parent rule, since the argument itself
// exports no statement.
void collect_child_statements(const AssuranceCase& c, const std::string& id,
                              const std::set<std::string>& templates,
                              std::vector<Literal>& out,
                              std::vector<std::string>& guarded_arguments) {
  for (const Edge& e : c.edges()) {
    if (e.parent != id) continue;
    if (e.kind != EdgeKind::supports && e.kind != EdgeKind::side_supports) continue;
    if (!c.has_node(e.child)) throw TranslateError("unresolved reference to child '" + e.child + "'");
    const Node& child = c.node(e.child);
    if (child.kind == NodeKind::argument) {
      if (!c.defeaters_of(child.id).empty()) guarded_arguments.push_back(child.id);
      collect_child_statements(c, child.id, templates, out, guarded_arguments);
    } else {
      out.push_back(statement_literal(c, child, templates));
    }
  }
}

std::string statement_predicate_for(const Node& n) {
  switch (n.kind) {
    case NodeKind::evidence:
      return "evidenceStmt";
    case NodeKind::side_claim:
      return "side_ClaimStmt";
    case NodeKind::defeater:
      return "defeater";
    default:
      return "claimStmt";
  }
}

std::size_t statement_arity_for(const Node& n) {
  switch (n.kind) {
    case NodeKind::evidence:
    case NodeKind::defeater:
      return 5;
    default:
      return 4;
  }
}

void append_head_support(const Node& node, const PropertyExpansion& exp,
                         std::vector<Rule>& rules) {
  if (exp.property_list.empty()) {
    Rule fact;
    fact.head = exp.head;
    rules.push_back(std::move(fact));
    return;
  }
  Rule bridge;
  bridge.head = exp.head;
  for (const Literal& p : exp.property_list) bridge.body.push_back({false, p});
  rules.push_back(std::move(bridge));
  // Evidence establishes truth; side claims, defeaters, and theory nodes
  // assert their own content. Plain claims must earn their properties from
  // the facts below them.
  if (node.kind != NodeKind::claim && node.kind != NodeKind::argument) {
    for (const Literal& p : exp.property_list) {
      Rule fact;
      fact.head = p;
      rules.push_back(std::move(fact));
    }
  }
}

std::vector<Rule> translate_node_impl(const AssuranceCase& c, const Node& node,
                                      const std::set<std::string>& templates) {
  std::vector<Rule> rules;
  if (node.kind == NodeKind::argument) return rules;

  NodeContext ctx = node_context(c, node, templates);
  PropertyExpansion exp = expand_claim_predicate(node, ctx.app_tag);
  bool guarded = !c.defeaters_of(node.id).empty();

  std::vector<Literal> children;
  std::vector<std::string> guarded_arguments;
  collect_child_statements(c, node.id, templates, children, guarded_arguments);

  const bool theory_definition_root = ctx.in_template && is_theory_root(c, node);

  Rule stmt;
  if (theory_definition_root) {
    stmt.head = make_literal(
        "theory", {Term::atom(node.id), ctx.app_tag, claim_term(exp.head)});
  } else {
    stmt.head = statement_literal(c, node, templates);
  }

  bool emit_stmt = true;
  if (node.kind == NodeKind::defeater) {
    // Leaf unresolved defeaters surface only as unresolved_defeater facts.
    if (children.empty() && node.defeater_status == DefeaterStatus::unresolved) emit_stmt = false;
  }

  if (emit_stmt) {
    for (const Literal& child : children) stmt.body.push_back({false, child});
    for (const std::string& arg_id : guarded_arguments) {
      stmt.body.push_back({true, make_literal("defeated", {Term::atom(arg_id)})});
    }
    if (guarded) {
      stmt.body.push_back({true, make_literal("defeated", {Term::atom(node.id)})});
    }
    stmt.body.push_back({false, exp.head});
    if (node.theory_ref) {
      if (!c.has_node(node.theory_ref->theory_id) ||
          c.node(node.theory_ref->theory_id).kind != NodeKind::theory_claim) {
        throw TranslateError("theory_ref to non-theory node '" + node.theory_ref->theory_id + "'");
      }
      stmt.body.push_back({false, make_literal("theory", {Term::atom(node.theory_ref->theory_id),
                                                          ctx.app_tag, claim_term(exp.head)})});
    }
    rules.push_back(std::move(stmt));
  }

  append_head_support(node, exp, rules);

  if (node.kind == NodeKind::defeater && node.defeater_status == DefeaterStatus::unresolved) {
    Rule fact;
    fact.head = make_literal("unresolved_defeater",
                             {Term::atom(node.id), Term::atom(node.defeats.value_or(""))});
    rules.push_back(std::move(fact));
  }
  return rules;
}

}  // namespace

Term application_none() { return Term::compound("application", {Term::atom("none")}); }

Term application_instance(std::size_t k) {
  return Term::compound("application", {Term::atom("instance_" + std::to_string(k))});
}

PropertyExpansion expand_claim_predicate(const Node& node, const Term& application_tag) {
  PropertyExpansion out;
  out.head = make_literal("claim", {application_tag, identifier_list(node.ope.objects),
                                    identifier_list(node.ope.properties),
                                    identifier_list(node.ope.environments)});

  const RelationshipMode& rel = node.relationship;
  if (rel.mode == RelMode::off) return out;

  std::vector<Term> env_args;
  if (rel.include_environment) {
    for (const std::string& e : node.ope.environments) env_args.push_back(term_for_identifier(e));
  }
  auto with_env = [&](std::vector<Term> args) {
    args.insert(args.end(), env_args.begin(), env_args.end());
    return args;
  };

  switch (rel.mode) {
    case RelMode::joint: {
      std::vector<Term> objects;
      for (const std::string& o : node.ope.objects) objects.push_back(term_for_identifier(o));
      for (const std::string& p : node.ope.properties) {
        out.property_list.push_back(make_literal(p, with_env(objects)));
      }
      break;
    }
    case RelMode::positional: {
      if (node.ope.objects.size() != node.ope.properties.size()) {
        throw TranslateError("positional relationship at '" + node.id + "' needs " +
                             std::to_string(node.ope.objects.size()) + " properties, has " +
                             std::to_string(node.ope.properties.size()));
      }
      for (std::size_t i = 0; i < node.ope.properties.size(); ++i) {
        out.property_list.push_back(make_literal(
            node.ope.properties[i], with_env({term_for_identifier(node.ope.objects[i])})));
      }
      break;
    }
    case RelMode::distributive: {
      for (const std::string& p : node.ope.properties) {
        for (const std::string& o : node.ope.objects) {
          out.property_list.push_back(make_literal(p, with_env({term_for_identifier(o)})));
        }
      }
      break;
    }
    case RelMode::off:
      break;
  }
  return out;
}

std::vector<Rule> translate_node(const Node& node, const AssuranceCase& c) {
  return translate_node_impl(c, node, template_node_ids(c));
}

ExportBundle translate_case(const AssuranceCase& c) {
  for (const Diagnostic& d : validate_case(c)) {
    if (d.severity == Diagnostic::Severity::error) {
      throw TranslateError("case fails validation: [" + d.rule + "] " + d.message);
    }
  }

  std::set<std::string> templates = template_node_ids(c);
  ExportBundle bundle;
  std::set<std::string> visited;

  std::function<void(const std::string&, Program&)> emit_subtree = [&](const std::string& id,
                                                                       Program& target) {
    if (!visited.insert(id).second) return;
    const Node& n = c.node(id);
    for (Rule& r : translate_node_impl(c, n, templates)) target.rules.push_back(std::move(r));
    for (const Edge& e : c.edges()) {
      if (e.parent != id) continue;
      if (e.kind == EdgeKind::supports || e.kind == EdgeKind::side_supports) {
        emit_subtree(e.child, target);
      }
    }
  };

  emit_subtree(c.root(), bundle.core);
  for (const Node& n : c.nodes()) {
    if (n.kind == NodeKind::defeater) emit_subtree(n.id, bundle.core);
  }

  bool any_defeater = std::any_of(c.edges().begin(), c.edges().end(), [](const Edge& e) {
    return e.kind == EdgeKind::defeats;
  });
  if (any_defeater) {
    Rule defeated;
    defeated.head = make_literal("defeated", {Term::var("N")});
    defeated.body.push_back(
        {false, make_literal("unresolved_defeater", {Term::var("D"), Term::var("N")})});
    bundle.core.rules.push_back(std::move(defeated));
  }

  for (const Node& n : c.nodes()) {
    if (is_theory_root(c, n)) emit_subtree(n.id, bundle.theories);
  }

  const Node& root = c.node(c.root());
  NodeContext root_ctx = node_context(c, root, templates);
  PropertyExpansion root_exp = expand_claim_predicate(root, root_ctx.app_tag);
  Literal query_lit = make_literal(
      "claimStmt", {Term::atom(root.id), root_ctx.app_tag, claim_term(root_exp.head),
                    Term::var("_1")});
  bundle.positive_query.elements.push_back({false, query_lit});
  bundle.negative_query.elements.push_back({true, query_lit});

  for (const Node& n : c.nodes()) {
    if (n.kind != NodeKind::defeater) continue;
    const Node& target = c.node(n.defeats.value());
    Rule constraint;
    std::vector<Term> args;
    args.push_back(Term::atom(target.id));
    for (std::size_t i = 1; i < statement_arity_for(target); ++i) {
      args.push_back(Term::var("_" + std::to_string(i)));
    }
    constraint.body.push_back({false, make_literal(statement_predicate_for(target), args)});
    constraint.body.push_back(
        {false, make_literal("unresolved_defeater", {Term::atom(n.id), Term::atom(target.id)})});
    bundle.defeater_constraints.rules.push_back(std::move(constraint));
  }

  return bundle;
}

TheoryInstance instantiate_theory(const std::string& theory_root, const TheoryApplication& app,
                                  const AssuranceCase& c) {
  if (!c.has_node(theory_root) || c.node(theory_root).kind != NodeKind::theory_claim) {
    throw TranslateError("theory_ref to non-theory node '" + theory_root + "'");
  }
  std::set<std::string> vars = theory_variables(c, theory_root);
  Substitution subst;
  for (const auto& [var, atom] : app.binding) {
    if (is_variable_name(atom)) {
      throw TranslateError("binding maps to non-atom: " + var + " -> " + atom);
    }
    subst.bind(var, Term::atom(atom));
  }
  for (const std::string& v : vars) {
    if (!subst.lookup(v)) throw TranslateError("unbound theory variable " + v);
  }

  std::size_t k = 1;
  {
    std::size_t counter = 0;
    for (const Node& n : c.nodes()) {
      if (!n.theory_ref) continue;
      ++counter;
      if (*n.theory_ref == app) {
        k = counter;
        break;
      }
    }
  }
  subst.bind(kApplicationVar, application_instance(k));

  std::set<std::string> templates = template_node_ids(c);
  TheoryInstance out;
  for (const std::string& id : theory_subtree(c, theory_root)) {
    for (const Rule& r : translate_node_impl(c, c.node(id), templates)) {
      out.rules.push_back(subst.apply(r));
    }
  }
  out.obligations = app.node_correspondence;
  return out;
}

Program analysis_program(const AssuranceCase& c) {
  ExportBundle bundle = translate_case(c);
  Program p = std::move(bundle.core);
  for (const Node& n : c.nodes()) {
    if (!n.theory_ref) continue;
    TheoryInstance instance = instantiate_theory(n.theory_ref->theory_id, *n.theory_ref, c);
    for (Rule& r : instance.rules) p.rules.push_back(std::move(r));
  }
  return p;
}

}  // namespace caseforge
