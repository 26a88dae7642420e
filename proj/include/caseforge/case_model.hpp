#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace caseforge {

class CaseError : public std::runtime_error {
public:
  explicit CaseError(const std::string& message) : std::runtime_error(message) {}
};

enum class NodeKind { claim, evidence, side_claim, argument, defeater, theory_claim };
enum class EdgeKind { supports, side_supports, defeats, applies_theory };
enum class RelMode { off, joint, positional, distributive };
enum class DefeaterStatus { unresolved, resolved };

std::string to_string(NodeKind k);
std::string to_string(EdgeKind k);
std::string to_string(RelMode m);
std::string to_string(DefeaterStatus s);

/// Object-property-environment triple: "object O satisfies property P in
/// environment E". Identifiers with a leading uppercase letter or
/// underscore are variables and only legal inside theory definitions.
struct OpeTriple {
  std::vector<std::string> objects;
  std::vector<std::string> properties;
  std::vector<std::string> environments;

  bool operator==(const OpeTriple&) const = default;
};

struct RelationshipMode {
  RelMode mode = RelMode::off;
  bool include_environment = false;

  bool operator==(const RelationshipMode&) const = default;
};

struct EvidenceArtifact {
  std::string artefact;
  std::string uri;

  bool operator==(const EvidenceArtifact&) const = default;
};

/// Reference from a concrete claim to a theory definition: which theory,
/// how its variables are instantiated, and which concrete nodes discharge
/// which theory nodes.
struct TheoryApplication {
  std::string theory_id;
  std::vector<std::pair<std::string, std::string>> binding;             // variable -> atom
  std::vector<std::pair<std::string, std::string>> node_correspondence; // app node -> theory node

  bool operator==(const TheoryApplication&) const = default;
};

struct Node {
  std::string id;
  NodeKind kind = NodeKind::claim;
  std::string description;
  OpeTriple ope;
  RelationshipMode relationship;
  std::optional<EvidenceArtifact> evidence;          // evidence nodes only
  std::optional<std::string> justification_text;     // side claims only
  std::optional<std::string> defeats;                // defeaters only
  std::optional<DefeaterStatus> defeater_status;     // defeaters only
  std::optional<TheoryApplication> theory_ref;       // claims applying a theory

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string parent;
  std::string child;
  EdgeKind kind = EdgeKind::supports;

  bool operator==(const Edge&) const = default;
};

struct Vocabulary {
  std::vector<std::string> object_types;
  std::vector<std::pair<std::string, std::string>> instances;  // (atom, type)
  std::vector<std::string> properties;
  std::vector<std::string> environments;

  bool operator==(const Vocabulary&) const = default;
};

/// Immutable after load; all analyses are pure functions over it.
class AssuranceCase {
public:
  AssuranceCase() = default;
  AssuranceCase(std::vector<Node> nodes, std::vector<Edge> edges, std::string root,
                Vocabulary vocabulary);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& root() const { return root_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }

  bool has_node(const std::string& id) const { return index_.count(id) > 0; }
  const Node& node(const std::string& id) const;

  // Children of `id` through supports/side-supports edges, in edge order.
  std::vector<const Node*> support_children(const std::string& id) const;
  // Defeaters attached to `id` through defeats edges, in edge order.
  std::vector<const Node*> defeaters_of(const std::string& id) const;

  bool operator==(const AssuranceCase& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_ && root_ == other.root_ &&
           vocabulary_ == other.vocabulary_;
  }

private:
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::string root_;
  Vocabulary vocabulary_;
};

struct Diagnostic {
  enum class Severity { error, warning };
  std::string node_id;  // empty for case-level findings
  std::string rule;     // short name of the violated invariant
  std::string message;
  Severity severity = Severity::error;
};

/// Parses the JSON case document. Throws CaseError on malformed JSON,
/// duplicate ids, dangling references, or a defeater without a target.
AssuranceCase load_case(const std::string& json_text);
AssuranceCase load_case_file(const std::string& path);

/// Canonical JSON for the case; load_case(save_case(c)) == c.
std::string save_case(const AssuranceCase& c);

/// Structural invariant checks; empty result means the case is well formed.
std::vector<Diagnostic> validate_case(const AssuranceCase& c);

struct VocabularyReport {
  Vocabulary vocabulary;               // declared merged with used atoms
  std::vector<std::string> undeclared; // used but not declared anywhere
};

VocabularyReport vocabulary_of(const AssuranceCase& c);

/// Node ids of the theory subtree rooted at `root_id`, depth-first preorder
/// over supports/side-supports edges.
std::vector<std::string> theory_subtree(const AssuranceCase& c, const std::string& root_id);

/// OPE variables (leading-uppercase identifiers) used in the subtree.
std::set<std::string> theory_variables(const AssuranceCase& c, const std::string& root_id);

}  // namespace caseforge
