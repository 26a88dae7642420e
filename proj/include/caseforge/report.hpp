#pragma once

#include <string>
#include <vector>

#include "caseforge/checks.hpp"
#include "caseforge/engine.hpp"

namespace caseforge {

/// Verdict summary plus the justification trees behind the verdicts.
/// Each tree a verdict refers to appears exactly once in `trees`.
struct Report {
  std::string title;
  std::string case_id;
  std::string timestamp;  // left empty for reproducible output
  std::vector<Verdict> verdicts;
  std::vector<JustificationTree> trees;
};

/// Moves each verdict's justification into the report's tree list.
Report make_report(std::string title, std::string case_id, std::vector<Verdict> verdicts);

std::string render_justification(const JustificationTree& tree, int indent = 0);

/// One header line, one line per verdict, then one line per tree node,
/// indented two spaces per depth. `✓` proved, `✗` failed, NAF literals
/// prefixed `not`.
std::string render_text(const Report& r);

/// Self-contained HTML with native <details> disclosure, no scripts or
/// external assets; all text HTML-escaped.
std::string render_html(const Report& r);

std::string render_witness(const Substitution& witness);

}  // namespace caseforge
