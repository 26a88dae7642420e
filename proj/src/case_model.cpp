#include "caseforge/case_model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "caseforge/term.hpp"
#include "json.hpp"

namespace caseforge {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename EnumT>
EnumT parse_enum(const std::string& value,
                 const std::vector<std::pair<std::string, EnumT>>& table,
                 const std::string& what) {
  for (const auto& [name, e] : table) {
    if (name == value) return e;
  }
  throw CaseError("unknown " + what + ": '" + value + "'");
}

const std::vector<std::pair<std::string, NodeKind>> kNodeKinds = {
    {"claim", NodeKind::claim},
    {"evidence", NodeKind::evidence},
    {"side_claim", NodeKind::side_claim},
    {"argument", NodeKind::argument},
    {"defeater", NodeKind::defeater},
    {"theory_claim", NodeKind::theory_claim},
};

const std::vector<std::pair<std::string, EdgeKind>> kEdgeKinds = {
    {"supports", EdgeKind::supports},
    {"side-supports", EdgeKind::side_supports},
    {"defeats", EdgeKind::defeats},
    {"applies-theory", EdgeKind::applies_theory},
};

const std::vector<std::pair<std::string, RelMode>> kRelModes = {
    {"off", RelMode::off},
    {"joint", RelMode::joint},
    {"positional", RelMode::positional},
    {"distributive", RelMode::distributive},
};

const std::vector<std::pair<std::string, DefeaterStatus>> kStatuses = {
    {"unresolved", DefeaterStatus::unresolved},
    {"resolved", DefeaterStatus::resolved},
};

template <typename EnumT>
std::string enum_name(EnumT value, const std::vector<std::pair<std::string, EnumT>>& table) {
  for (const auto& [name, e] : table) {
    if (e == value) return name;
  }
  return "?";
}

std::vector<std::string> string_array(const ordered_json& j, const std::string& what) {
  std::vector<std::string> out;
  if (!j.is_array()) throw CaseError(what + " must be an array of strings");
  for (const auto& item : j) {
    if (!item.is_string()) throw CaseError(what + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool is_ope_variable(const std::string& id) { return is_variable_name(id); }

}  // namespace

std::string to_string(NodeKind k) { return enum_name(k, kNodeKinds); }
std::string to_string(EdgeKind k) { return enum_name(k, kEdgeKinds); }
std::string to_string(RelMode m) { return enum_name(m, kRelModes); }
std::string to_string(DefeaterStatus s) { return enum_name(s, kStatuses); }

AssuranceCase::AssuranceCase(std::vector<Node> nodes, std::vector<Edge> edges, std::string root,
                             Vocabulary vocabulary)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      root_(std::move(root)),
      vocabulary_(std::move(vocabulary)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) {
      throw CaseError("duplicate id: '" + nodes_[i].id + "'");
    }
  }
}

const Node& AssuranceCase::node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw CaseError("dangling node reference: '" + id + "'");
  return nodes_[it->second];
}

std::vector<const Node*> AssuranceCase::support_children(const std::string& id) const {
  std::vector<const Node*> out;
  for (const Edge& e : edges_) {
    if (e.parent != id) continue;
    if (e.kind == EdgeKind::supports || e.kind == EdgeKind::side_supports) {
      if (has_node(e.child)) out.push_back(&node(e.child));
    }
  }
  return out;
}

std::vector<const Node*> AssuranceCase::defeaters_of(const std::string& id) const {
  std::vector<const Node*> out;
  for (const Edge& e : edges_) {
    if (e.kind == EdgeKind::defeats && e.child == id && has_node(e.parent)) {
      out.push_back(&node(e.parent));
    }
  }
  return out;
}

AssuranceCase load_case(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CaseError(std::string("case document parse error: ") + e.what());
  }
  if (!doc.is_object()) throw CaseError("case document must be a JSON object");

  std::vector<Node> nodes;
  for (const auto& jn : doc.value("nodes", ordered_json::array())) {
    Node n;
    if (!jn.contains("id") || !jn["id"].is_string()) throw CaseError("node without string id");
    n.id = jn["id"].get<std::string>();
    if (!jn.contains("kind")) throw CaseError("node '" + n.id + "' has no kind");
    n.kind = parse_enum(jn["kind"].get<std::string>(), kNodeKinds, "node kind");
    n.description = jn.value("description", "");
    if (jn.contains("objects")) n.ope.objects = string_array(jn["objects"], "objects");
    if (jn.contains("properties")) n.ope.properties = string_array(jn["properties"], "properties");
    if (jn.contains("environments"))
      n.ope.environments = string_array(jn["environments"], "environments");
    if (jn.contains("relationship")) {
      const auto& jr = jn["relationship"];
      if (jr.is_string()) {
        n.relationship.mode = parse_enum(jr.get<std::string>(), kRelModes, "relationship mode");
      } else if (jr.is_object()) {
        n.relationship.mode =
            parse_enum(jr.value("mode", "off"), kRelModes, "relationship mode");
        n.relationship.include_environment = jr.value("include_environment", false);
      } else {
        throw CaseError("relationship of '" + n.id + "' must be a string or object");
      }
    }
    if (jn.contains("artefact") || jn.contains("uri")) {
      n.evidence = EvidenceArtifact{jn.value("artefact", ""), jn.value("uri", "")};
    }
    if (jn.contains("justification")) n.justification_text = jn["justification"].get<std::string>();
    if (jn.contains("defeats")) n.defeats = jn["defeats"].get<std::string>();
    if (jn.contains("defeater_status")) {
      n.defeater_status =
          parse_enum(jn["defeater_status"].get<std::string>(), kStatuses, "defeater status");
    }
    if (jn.contains("theory_ref")) {
      const auto& jt = jn["theory_ref"];
      TheoryApplication app;
      if (!jt.contains("theory_id")) throw CaseError("theory_ref of '" + n.id + "' has no theory_id");
      app.theory_id = jt["theory_id"].get<std::string>();
      for (const auto& [var, atom] : jt.value("binding", ordered_json::object()).items()) {
        app.binding.emplace_back(var, atom.get<std::string>());
      }
      for (const auto& [from, to] :
           jt.value("node_correspondence", ordered_json::object()).items()) {
        app.node_correspondence.emplace_back(from, to.get<std::string>());
      }
      n.theory_ref = std::move(app);
    }
    nodes.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  for (const auto& je : doc.value("edges", ordered_json::array())) {
    if (!je.is_array() || je.size() != 3) {
      throw CaseError("edge must be a [parent, child, kind] triple");
    }
    Edge e;
    e.parent = je[0].get<std::string>();
    e.child = je[1].get<std::string>();
    e.kind = parse_enum(je[2].get<std::string>(), kEdgeKinds, "edge kind");
    edges.push_back(std::move(e));
  }

  std::string root = doc.value("root", "");
  Vocabulary vocab;
  if (doc.contains("vocabulary")) {
    const auto& jv = doc["vocabulary"];
    if (jv.contains("types")) vocab.object_types = string_array(jv["types"], "vocabulary types");
    for (const auto& ji : jv.value("instances", ordered_json::array())) {
      if (!ji.is_array() || ji.size() != 2) {
        throw CaseError("vocabulary instance must be an [atom, type] pair");
      }
      vocab.instances.emplace_back(ji[0].get<std::string>(), ji[1].get<std::string>());
    }
    if (jv.contains("properties"))
      vocab.properties = string_array(jv["properties"], "vocabulary properties");
    if (jv.contains("environments"))
      vocab.environments = string_array(jv["environments"], "vocabulary environments");
  }

  // Cross-reference resolution.
  std::set<std::string> ids;
  for (const Node& n : nodes) {
    if (!ids.insert(n.id).second) throw CaseError("duplicate id: '" + n.id + "'");
  }
  auto require_id = [&](const std::string& id, const std::string& context) {
    if (!ids.count(id)) {
      throw CaseError("dangling node reference: '" + id + "' (" + context + ")");
    }
  };
  for (const Edge& e : edges) {
    require_id(e.parent, "edge parent");
    require_id(e.child, "edge child");
  }
  if (root.empty()) throw CaseError("case document has no root");
  require_id(root, "root");

  // Keep the defeats field and defeats edges in sync.
  for (Node& n : nodes) {
    if (n.kind != NodeKind::defeater) continue;
    const Edge* defeat_edge = nullptr;
    for (const Edge& e : edges) {
      if (e.kind == EdgeKind::defeats && e.parent == n.id) {
        defeat_edge = &e;
        break;
      }
    }
    if (n.defeats) {
      require_id(*n.defeats, "defeats target of '" + n.id + "'");
      if (!defeat_edge) {
        edges.push_back({n.id, *n.defeats, EdgeKind::defeats});
      } else if (defeat_edge->child != *n.defeats) {
        throw CaseError("defeater '" + n.id + "' names target '" + *n.defeats +
                        "' but its defeats edge points at '" + defeat_edge->child + "'");
      }
    } else if (defeat_edge) {
      n.defeats = defeat_edge->child;
    } else {
      throw CaseError("defeater without target: '" + n.id + "'");
    }
    if (!n.defeater_status) n.defeater_status = DefeaterStatus::unresolved;
  }

  // Same for theory references and applies-theory edges.
  for (Node& n : nodes) {
    if (!n.theory_ref) continue;
    require_id(n.theory_ref->theory_id, "theory_ref of '" + n.id + "'");
    bool have_edge = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
      return e.kind == EdgeKind::applies_theory && e.parent == n.id &&
             e.child == n.theory_ref->theory_id;
    });
    if (!have_edge) edges.push_back({n.id, n.theory_ref->theory_id, EdgeKind::applies_theory});
  }

  return AssuranceCase(std::move(nodes), std::move(edges), std::move(root), std::move(vocab));
}

AssuranceCase load_case_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CaseError("cannot open case file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_case(buffer.str());
}

std::string save_case(const AssuranceCase& c) {
  ordered_json doc;
  doc["root"] = c.root();
  doc["nodes"] = ordered_json::array();
  for (const Node& n : c.nodes()) {
    ordered_json jn;
    jn["id"] = n.id;
    jn["kind"] = to_string(n.kind);
    if (!n.description.empty()) jn["description"] = n.description;
    if (!n.ope.objects.empty()) jn["objects"] = n.ope.objects;
    if (!n.ope.properties.empty()) jn["properties"] = n.ope.properties;
    if (!n.ope.environments.empty()) jn["environments"] = n.ope.environments;
    if (n.relationship != RelationshipMode{}) {
      jn["relationship"] = {{"mode", to_string(n.relationship.mode)},
                            {"include_environment", n.relationship.include_environment}};
    }
    if (n.evidence) {
      jn["artefact"] = n.evidence->artefact;
      jn["uri"] = n.evidence->uri;
    }
    if (n.justification_text) jn["justification"] = *n.justification_text;
    if (n.defeats) jn["defeats"] = *n.defeats;
    if (n.defeater_status) jn["defeater_status"] = to_string(*n.defeater_status);
    if (n.theory_ref) {
      ordered_json jt;
      jt["theory_id"] = n.theory_ref->theory_id;
      ordered_json jb = ordered_json::object();
      for (const auto& [var, atom] : n.theory_ref->binding) jb[var] = atom;
      jt["binding"] = std::move(jb);
      ordered_json jc = ordered_json::object();
      for (const auto& [from, to] : n.theory_ref->node_correspondence) jc[from] = to;
      jt["node_correspondence"] = std::move(jc);
      jn["theory_ref"] = std::move(jt);
    }
    doc["nodes"].push_back(std::move(jn));
  }
  doc["edges"] = ordered_json::array();
  for (const Edge& e : c.edges()) {
    doc["edges"].push_back({e.parent, e.child, to_string(e.kind)});
  }
  ordered_json jv;
  jv["types"] = c.vocabulary().object_types;
  jv["instances"] = ordered_json::array();
  for (const auto& [atom, type] : c.vocabulary().instances) {
    jv["instances"].push_back({atom, type});
  }
  jv["properties"] = c.vocabulary().properties;
  jv["environments"] = c.vocabulary().environments;
  doc["vocabulary"] = std::move(jv);
  return doc.dump(2) + "\n";
}

std::vector<std::string> theory_subtree(const AssuranceCase& c, const std::string& root_id) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    if (!seen.insert(id).second) return;
    out.push_back(id);
    for (const Node* child : c.support_children(id)) visit(child->id);
  };
  if (c.has_node(root_id)) visit(root_id);
  return out;
}

std::set<std::string> theory_variables(const AssuranceCase& c, const std::string& root_id) {
  std::set<std::string> vars;
  for (const std::string& id : theory_subtree(c, root_id)) {
    const Node& n = c.node(id);
    for (const std::string& o : n.ope.objects) {
      if (is_ope_variable(o)) vars.insert(o);
    }
    for (const std::string& e : n.ope.environments) {
      if (is_ope_variable(e)) vars.insert(e);
    }
  }
  return vars;
}

std::vector<Diagnostic> validate_case(const AssuranceCase& c) {
  std::vector<Diagnostic> out;
  auto error = [&](const std::string& node_id, const std::string& rule, const std::string& msg) {
    out.push_back({node_id, rule, msg, Diagnostic::Severity::error});
  };

  // Edge endpoints first; graph checks below assume they resolve.
  bool dangling = false;
  for (const Edge& e : c.edges()) {
    for (const std::string& endpoint : {e.parent, e.child}) {
      if (!c.has_node(endpoint)) {
        error("", "edge-endpoint", "edge endpoint '" + endpoint + "' does not exist");
        dangling = true;
      }
    }
  }

  if (!c.has_node(c.root())) {
    error("", "root", "root '" + c.root() + "' does not exist");
    return out;
  }
  if (c.node(c.root()).kind != NodeKind::claim) {
    error(c.root(), "root-claim", "root node must be a claim");
  }
  if (dangling) return out;

  // Support graph (everything except defeats edges) must be acyclic.
  std::map<std::string, std::vector<std::string>> support;
  for (const Edge& e : c.edges()) {
    if (e.kind != EdgeKind::defeats) support[e.parent].push_back(e.child);
  }
  {
    std::map<std::string, int> state;  // 0 unseen, 1 in progress, 2 done
    bool cycle = false;
    std::function<void(const std::string&)> dfs = [&](const std::string& id) {
      state[id] = 1;
      for (const std::string& next : support[id]) {
        if (cycle) return;
        int s = state.count(next) ? state[next] : 0;
        if (s == 1) {
          cycle = true;
          return;
        }
        if (s == 0) dfs(next);
      }
      state[id] = 2;
    };
    for (const Node& n : c.nodes()) {
      if (!state.count(n.id)) dfs(n.id);
      if (cycle) break;
    }
    if (cycle) error("", "support-acyclic", "cycle in support graph");
  }

  // Reachability: from the root over support edges; defeaters join once
  // their target is reachable; unapplied theory roots stand alone.
  {
    std::set<std::string> reachable;
    std::function<void(const std::string&)> visit = [&](const std::string& id) {
      if (!reachable.insert(id).second) return;
      for (const std::string& next : support[id]) visit(next);
    };
    visit(c.root());
    for (const Node& n : c.nodes()) {
      if (n.kind == NodeKind::theory_claim) {
        bool has_parent = std::any_of(c.edges().begin(), c.edges().end(), [&](const Edge& e) {
          return e.child == n.id && e.kind != EdgeKind::defeats;
        });
        if (!has_parent) visit(n.id);
      }
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Edge& e : c.edges()) {
        if (e.kind == EdgeKind::defeats && reachable.count(e.child) && !reachable.count(e.parent)) {
          visit(e.parent);
          grew = true;
        }
      }
    }
    for (const Node& n : c.nodes()) {
      if (!reachable.count(n.id)) {
        error(n.id, "reachable", "node is not reachable from the root or a theory definition");
      }
    }
  }

  for (const Edge& e : c.edges()) {
    if (e.kind == EdgeKind::defeats && c.node(e.parent).kind != NodeKind::defeater) {
      error(e.parent, "defeats-origin", "defeats edge must originate at a defeater");
    }
    if (e.kind == EdgeKind::side_supports && c.node(e.child).kind != NodeKind::side_claim) {
      error(e.child, "side-support-target", "side-supports edge must point at a side claim");
    }
    if (e.kind == EdgeKind::applies_theory && c.node(e.child).kind != NodeKind::theory_claim) {
      error(e.child, "applies-theory-target", "applies-theory edge must point at a theory claim");
    }
  }

  for (const Node& n : c.nodes()) {
    const bool is_evidence = n.kind == NodeKind::evidence;
    if (is_evidence != n.evidence.has_value()) {
      error(n.id, "evidence-artefact",
            is_evidence ? "evidence node has no artefact" : "artefact on a non-evidence node");
    }
    const bool is_defeater = n.kind == NodeKind::defeater;
    if (is_defeater != (n.defeats.has_value() && n.defeater_status.has_value())) {
      error(n.id, "defeater-fields",
            is_defeater ? "defeater without target or status"
                        : "defeats/defeater_status on a non-defeater node");
    }
    const bool is_side = n.kind == NodeKind::side_claim;
    if (is_side != n.justification_text.has_value()) {
      error(n.id, "side-claim-justification",
            is_side ? "side claim has no justification" : "justification on a non-side-claim node");
    }
    if (n.kind == NodeKind::argument &&
        (!n.ope.objects.empty() || !n.ope.properties.empty() || !n.ope.environments.empty())) {
      error(n.id, "argument-ope", "argument nodes carry no OPE triple");
    }
    if (n.theory_ref && n.kind != NodeKind::claim) {
      error(n.id, "theory-ref-kind", "theory_ref is only allowed on claims");
    }

    for (const std::string& id : n.ope.objects) {
      if (id.empty()) error(n.id, "ope-nonempty", "empty object identifier");
    }
    for (const std::string& id : n.ope.properties) {
      if (id.empty()) error(n.id, "ope-nonempty", "empty property identifier");
      if (is_ope_variable(id)) {
        error(n.id, "property-atom", "property '" + id + "' must be an atom, not a variable");
      }
    }
    for (const std::string& id : n.ope.environments) {
      if (id.empty()) error(n.id, "ope-nonempty", "empty environment identifier");
    }
    if (n.kind != NodeKind::theory_claim) {
      for (const std::string& id : n.ope.objects) {
        if (is_ope_variable(id)) {
          error(n.id, "variable-outside-theory", "variable '" + id + "' outside theory");
        }
      }
      for (const std::string& id : n.ope.environments) {
        if (is_ope_variable(id)) {
          error(n.id, "variable-outside-theory", "variable '" + id + "' outside theory");
        }
      }
    } else {
      for (const std::string& id : n.ope.objects) {
        if (id == "Application") {
          error(n.id, "reserved-variable", "'Application' is reserved for the instance slot");
        }
      }
      for (const std::string& id : n.ope.environments) {
        if (id == "Application") {
          error(n.id, "reserved-variable", "'Application' is reserved for the instance slot");
        }
      }
    }
    if (n.relationship.mode == RelMode::positional &&
        n.ope.objects.size() != n.ope.properties.size()) {
      error(n.id, "positional-arity",
            "positional relationship needs as many properties as objects");
    }

    if (n.theory_ref && c.has_node(n.theory_ref->theory_id)) {
      const Node& theory = c.node(n.theory_ref->theory_id);
      if (theory.kind != NodeKind::theory_claim) {
        error(n.id, "theory-ref-target", "theory_ref to non-theory node '" + theory.id + "'");
      } else {
        std::set<std::string> domain;
        for (const auto& [var, atom] : n.theory_ref->binding) {
          domain.insert(var);
          if (is_variable_name(atom)) {
            error(n.id, "binding-atom", "binding for '" + var + "' must map to an atom");
          }
        }
        std::set<std::string> vars = theory_variables(c, theory.id);
        if (domain != vars) {
          std::string msg = "binding domain mismatch for theory '" + theory.id + "'";
          for (const std::string& v : vars) {
            if (!domain.count(v)) msg += "; unbound theory variable " + v;
          }
          for (const std::string& v : domain) {
            if (!vars.count(v)) msg += "; spurious binding " + v;
          }
          error(n.id, "binding-domain", msg);
        }
      }
    }
  }

  std::set<std::string> declared_types(c.vocabulary().object_types.begin(),
                                       c.vocabulary().object_types.end());
  for (const auto& [atom, type] : c.vocabulary().instances) {
    if (!declared_types.count(type)) {
      error("", "instance-type", "instance '" + atom + "' references undeclared type '" + type + "'");
    }
  }

  return out;
}

VocabularyReport vocabulary_of(const AssuranceCase& c) {
  VocabularyReport report;
  report.vocabulary = c.vocabulary();

  std::set<std::string> declared_objects;
  for (const auto& [atom, type] : c.vocabulary().instances) declared_objects.insert(atom);
  std::set<std::string> declared_properties(c.vocabulary().properties.begin(),
                                            c.vocabulary().properties.end());
  std::set<std::string> declared_environments(c.vocabulary().environments.begin(),
                                              c.vocabulary().environments.end());

  std::set<std::string> merged_properties = declared_properties;
  std::set<std::string> merged_environments = declared_environments;
  std::set<std::string> undeclared_seen;

  auto flag = [&](const std::string& atom) {
    if (undeclared_seen.insert(atom).second) report.undeclared.push_back(atom);
  };

  for (const Node& n : c.nodes()) {
    for (const std::string& o : n.ope.objects) {
      if (is_ope_variable(o)) continue;
      if (!declared_objects.count(o)) flag(o);
    }
    for (const std::string& p : n.ope.properties) {
      if (merged_properties.insert(p).second) report.vocabulary.properties.push_back(p);
      if (!declared_properties.count(p)) flag(p);
    }
    for (const std::string& e : n.ope.environments) {
      if (is_ope_variable(e)) continue;
      if (merged_environments.insert(e).second) report.vocabulary.environments.push_back(e);
      if (!declared_environments.count(e)) flag(e);
    }
  }
  return report;
}

}  // namespace caseforge
