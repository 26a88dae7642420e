#include "caseforge/report.hpp"

#include "caseforge/printer.hpp"

namespace caseforge {

namespace {

std::string verdict_line(const Verdict& v) {
  std::string line = v.passed ? "[pass] " : "[fail] ";
  line += v.check_name;
  if (!v.witnesses.empty()) {
    line += "  witnesses: ";
    for (std::size_t i = 0; i < v.witnesses.size(); ++i) {
      if (i) line += "; ";
      line += render_witness(v.witnesses[i]);
    }
  }
  if (!v.blamed.empty()) {
    line += "  blamed: ";
    for (std::size_t i = 0; i < v.blamed.size(); ++i) {
      if (i) line += ", ";
      line += render_literal(v.blamed[i]);
    }
  }
  if (!v.detail.empty()) line += "  (" + v.detail + ")";
  return line;
}

std::string node_label(const JustificationTree& t) {
  bool ok = t.status == ProofStatus::proved || t.status == ProofStatus::naf_holds;
  std::string label = ok ? "✓ " : "✗ ";
  if (t.naf) label += "not ";
  label += render_literal(t.literal);
  if (!t.note.empty()) label += "  (" + t.note + ")";
  return label;
}

std::string escape_html(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void render_tree_html(const JustificationTree& t, std::string& out) {
  if (t.children.empty()) {
    out += "<div class=\"leaf\">" + escape_html(node_label(t)) + "</div>\n";
    return;
  }
  out += "<details open><summary>" + escape_html(node_label(t)) + "</summary>\n";
  for (const JustificationTree& c : t.children) render_tree_html(c, out);
  out += "</details>\n";
}

}  // namespace

Report make_report(std::string title, std::string case_id, std::vector<Verdict> verdicts) {
  Report r;
  r.title = std::move(title);
  r.case_id = std::move(case_id);
  for (Verdict& v : verdicts) {
    if (v.justification) {
      r.trees.push_back(std::move(*v.justification));
      v.justification.reset();
    }
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

std::string render_witness(const Substitution& witness) {
  if (witness.empty()) return "true";
  std::string out;
  bool first = true;
  for (const auto& [var, term] : witness.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += var + " = " + render_term(term);
  }
  return out;
}

std::string render_justification(const JustificationTree& tree, int indent) {
  std::string out(2 * indent, ' ');
  out += node_label(tree);
  out += "\n";
  for (const JustificationTree& c : tree.children) {
    out += render_justification(c, indent + 1);
  }
  return out;
}

std::string render_text(const Report& r) {
  std::string out = r.title;
  if (!r.case_id.empty()) out += " — " + r.case_id;
  if (!r.timestamp.empty()) out += " @ " + r.timestamp;
  out += "\n";
  for (const Verdict& v : r.verdicts) out += verdict_line(v) + "\n";
  for (const JustificationTree& t : r.trees) out += render_justification(t, 0);
  return out;
}

std::string render_html(const Report& r) {
  std::string out =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
      escape_html(r.title) +
      "</title>\n<style>\n"
      "body { font-family: sans-serif; margin: 1.5em; }\n"
      ".pass { color: #0a7a2f; }\n"
      ".fail { color: #b00020; }\n"
      "details { margin-left: 1.2em; }\n"
      ".leaf { margin-left: 1.6em; }\n"
      "summary { cursor: pointer; }\n"
      "</style>\n</head>\n<body>\n";
  out += "<h1>" + escape_html(r.title) + "</h1>\n";
  if (!r.case_id.empty()) {
    out += "<p>case: " + escape_html(r.case_id);
    if (!r.timestamp.empty()) out += " @ " + escape_html(r.timestamp);
    out += "</p>\n";
  }
  if (!r.verdicts.empty()) {
    out += "<ul>\n";
    for (const Verdict& v : r.verdicts) {
      out += "<li class=\"";
      out += v.passed ? "pass" : "fail";
      out += "\">" + escape_html(verdict_line(v)) + "</li>\n";
    }
    out += "</ul>\n";
  }
  for (const JustificationTree& t : r.trees) render_tree_html(t, out);
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace caseforge
