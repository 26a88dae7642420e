#include "caseforge/printer.hpp"

#include <cctype>
#include <sstream>

namespace caseforge {

namespace {

std::string quote_atom(const std::string& name) {
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

void render_term_to(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::atom:
      out += is_atom_name(t.text()) ? t.text() : quote_atom(t.text());
      break;
    case TermKind::variable:
      out += t.text();
      break;
    case TermKind::number:
      out += std::to_string(t.value());
      break;
    case TermKind::compound: {
      out += is_atom_name(t.text()) ? t.text() : quote_atom(t.text());
      out.push_back('(');
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out.push_back(',');
        render_term_to(t.args()[i], out);
      }
      out.push_back(')');
      break;
    }
    case TermKind::list: {
      out.push_back('[');
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out.push_back(',');
        render_term_to(t.args()[i], out);
      }
      out.push_back(']');
      break;
    }
  }
}

}  // namespace

std::string render_term(const Term& t) {
  std::string out;
  render_term_to(t, out);
  return out;
}

std::string render_literal(const Literal& lit) {
  std::string out;
  if (lit.classical_neg) out.push_back('-');
  out += lit.predicate;
  if (!lit.args.empty()) {
    out.push_back('(');
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
      if (i) out.push_back(',');
      render_term_to(lit.args[i], out);
    }
    out.push_back(')');
  }
  return out;
}

std::string render_body_element(const BodyElement& e) {
  return e.naf ? "not " + render_literal(e.lit) : render_literal(e.lit);
}

std::string render_rule(const Rule& r) {
  if (r.is_fact()) return render_literal(*r.head) + ".\n";
  std::string out;
  if (r.head) {
    out = render_literal(*r.head) + " :-\n";
  } else {
    out = ":-\n";
  }
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    out += "    " + render_body_element(r.body[i]);
    out += (i + 1 == r.body.size()) ? ".\n" : ",\n";
  }
  return out;
}

std::string render_program(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules) out += render_rule(r);
  return out;
}

std::string render_query(const Query& q) {
  std::string out = "?- ";
  for (std::size_t i = 0; i < q.elements.size(); ++i) {
    if (i) out += ", ";
    out += render_body_element(q.elements[i]);
  }
  out += ".\n";
  return out;
}

std::vector<std::string> tokenize_program_text(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\'') {
      std::string tok(1, c);
      ++i;
      while (i < text.size()) {
        tok.push_back(text[i]);
        if (text[i] == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            tok.push_back(text[i + 1]);
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        ++i;
      }
      tokens.push_back(std::move(tok));
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string tok;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        tok.push_back(text[i]);
        ++i;
      }
      tokens.push_back(std::move(tok));
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == '-') {
      tokens.push_back(":-");
      i += 2;
      continue;
    }
    if (c == '?' && i + 1 < text.size() && text[i + 1] == '-') {
      tokens.push_back("?-");
      i += 2;
      continue;
    }
    tokens.push_back(std::string(1, c));
    ++i;
  }
  return tokens;
}

}  // namespace caseforge
