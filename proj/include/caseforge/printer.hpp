#pragma once

#include <string>
#include <vector>

#include "caseforge/term.hpp"

namespace caseforge {

std::string render_term(const Term& t);
std::string render_literal(const Literal& lit);
std::string render_body_element(const BodyElement& e);

// Facts and constraints on one line; rule bodies one element per line.
std::string render_rule(const Rule& r);
std::string render_program(const Program& p);
std::string render_query(const Query& q);

// Comparison tokens for whitespace-insensitive equality of program text.
std::vector<std::string> tokenize_program_text(const std::string& text);

}  // namespace caseforge
