#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "caseforge/term.hpp"

namespace caseforge {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}

  int line;
  int column;
};

struct ParseOptions {
  // `p(X) :- not q(X).` is rejected by default. Theory templates keep
  // variables in facts and are parsed with the check off.
  bool check_safety = true;
};

/// Program text plus any `?- ...` queries it contained.
struct ParsedUnit {
  Program program;
  std::vector<Query> queries;
};

// Grammar: `head :- b1, ..., bn.`  facts `head.`  constraints `:- body.`
// queries `?- body.`  NAF `not L`  classical negation `-p(...)`
// lists `[a,b]`  comments `% ...`. Anonymous `_` gets a fresh `_k` name
// per clause.
ParsedUnit parse_unit(const std::string& text, const ParseOptions& opts = {});

// parse_unit restricted to rule clauses; a query is an error here.
Program parse_program(const std::string& text, const ParseOptions& opts = {});

// Accepts `?- body.`, `body.`, or bare `body`.
Query parse_query(const std::string& text);

Term parse_term_text(const std::string& text);

}  // namespace caseforge
