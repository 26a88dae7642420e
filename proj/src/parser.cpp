#include "caseforge/parser.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace caseforge {

namespace {

enum class Tok {
  atom,        // lowercase identifier or quoted
  variable,    // uppercase/underscore identifier
  number,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  period,
  implies,     // :-
  query,       // ?-
  minus,
  end
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_layout();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::end;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') return simple(t, Tok::lparen);
    if (c == ')') return simple(t, Tok::rparen);
    if (c == '[') return simple(t, Tok::lbracket);
    if (c == ']') return simple(t, Tok::rbracket);
    if (c == ',') return simple(t, Tok::comma);
    if (c == '.') return simple(t, Tok::period);
    if (c == ':') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        advance();
        advance();
        t.kind = Tok::implies;
        return t;
      }
      fail(t, "unexpected ':'");
    }
    if (c == '?') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        advance();
        advance();
        t.kind = Tok::query;
        return t;
      }
      fail(t, "unexpected '?'");
    }
    if (c == '-') return simple(t, Tok::minus);
    if (c == '\'') return quoted_atom(t);
    if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier(t);
    fail(t, std::string("unexpected character '") + c + "'");
    return t;  // unreachable
  }

private:
  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_layout() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token simple(Token& t, Tok kind) {
    t.kind = kind;
    advance();
    return t;
  }

  Token quoted_atom(Token& t) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail(t, "unterminated quoted atom");
      char c = text_[pos_];
      if (c == '\'') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
          out.push_back('\'');  // doubled quote escape
          advance();
          advance();
          continue;
        }
        advance();
        break;
      }
      out.push_back(c);
      advance();
    }
    t.kind = Tok::atom;
    t.text = std::move(out);
    return t;
  }

  Token number(Token& t) {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits.push_back(text_[pos_]);
      advance();
    }
    t.kind = Tok::number;
    t.value = std::stoll(digits);
    return t;
  }

  Token identifier(Token& t) {
    std::string name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name.push_back(c);
        advance();
      } else {
        break;
      }
    }
    t.kind = is_variable_name(name) ? Tok::variable : Tok::atom;
    t.text = std::move(name);
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
public:
  Parser(const std::string& text, const ParseOptions& opts)
      : lexer_(text), opts_(opts) {
    current_ = lexer_.next();
  }

  ParsedUnit unit() {
    ParsedUnit out;
    while (current_.kind != Tok::end) {
      clause_var_names_.clear();
      anon_counter_ = 0;
      if (current_.kind == Tok::query) {
        consume();
        Query q;
        q.elements = body();
        expect(Tok::period, "expected '.' after query");
        out.queries.push_back(std::move(q));
        continue;
      }
      out.program.rules.push_back(rule());
    }
    if (opts_.check_safety) {
      for (std::size_t i = 0; i < out.program.rules.size(); ++i) {
        auto unsafe = unsafe_variables(out.program.rules[i]);
        if (!unsafe.empty()) {
          throw ParseError(1, 1, "safety violation in rule " + std::to_string(i + 1) +
                                     ": variable " + unsafe.front() +
                                     " has no positive occurrence in the body");
        }
      }
    }
    return out;
  }

  Query query_only() {
    if (current_.kind == Tok::query) consume();
    Query q;
    q.elements = body();
    if (current_.kind == Tok::period) consume();
    expect(Tok::end, "trailing input after query");
    return q;
  }

  Term term_only() {
    Term t = term();
    expect(Tok::end, "trailing input after term");
    return t;
  }

private:
  void consume() { current_ = lexer_.next(); }

  void expect(Tok kind, const std::string& message) {
    if (current_.kind != kind) {
      throw ParseError(current_.line, current_.column, message);
    }
    if (kind != Tok::end) consume();
  }

  Rule rule() {
    Rule r;
    if (current_.kind == Tok::implies) {
      consume();
      r.body = body();
    } else {
      r.head = literal();
      if (current_.kind == Tok::implies) {
        consume();
        r.body = body();
      }
    }
    expect(Tok::period, "expected '.' at end of rule");
    return r;
  }

  std::vector<BodyElement> body() {
    std::vector<BodyElement> elems;
    while (true) {
      elems.push_back(body_element());
      if (current_.kind == Tok::comma) {
        consume();
        continue;
      }
      break;
    }
    return elems;
  }

  BodyElement body_element() {
    if (current_.kind == Tok::atom && current_.text == "not") {
      consume();
      return BodyElement{true, literal()};
    }
    return BodyElement{false, literal()};
  }

  Literal literal() {
    Literal lit;
    if (current_.kind == Tok::minus) {
      consume();
      lit.classical_neg = true;
    }
    if (current_.kind != Tok::atom) {
      throw ParseError(current_.line, current_.column, "expected predicate name");
    }
    if (!is_atom_name(current_.text)) {
      throw ParseError(current_.line, current_.column,
                       "predicate must be an atom-shaped identifier");
    }
    lit.predicate = current_.text;
    consume();
    if (current_.kind == Tok::lparen) {
      consume();
      lit.args = term_args(Tok::rparen, "expected ')' after arguments");
    }
    return lit;
  }

  std::vector<Term> term_args(Tok closer, const std::string& message) {
    std::vector<Term> args;
    if (current_.kind == closer) {  // empty list `[]`
      consume();
      return args;
    }
    while (true) {
      args.push_back(term());
      if (current_.kind == Tok::comma) {
        consume();
        continue;
      }
      break;
    }
    expect(closer, message);
    return args;
  }

  Term term() {
    switch (current_.kind) {
      case Tok::minus: {
        consume();
        if (current_.kind != Tok::number) {
          throw ParseError(current_.line, current_.column,
                           "expected digits after '-' in term position");
        }
        Term t = Term::number(-current_.value);
        consume();
        return t;
      }
      case Tok::number: {
        Term t = Term::number(current_.value);
        consume();
        return t;
      }
      case Tok::variable: {
        std::string name = current_.text;
        clause_var_names_.insert(name);
        consume();
        if (name == "_") name = fresh_anon();
        return Term::var(name);
      }
      case Tok::atom: {
        std::string name = current_.text;
        consume();
        if (current_.kind == Tok::lparen) {
          consume();
          return Term::compound(name, term_args(Tok::rparen, "expected ')' after arguments"));
        }
        return Term::atom(name);
      }
      case Tok::lbracket: {
        consume();
        return Term::list(term_args(Tok::rbracket, "expected ']' after list"));
      }
      default:
        throw ParseError(current_.line, current_.column, "expected a term");
    }
  }

  std::string fresh_anon() {
    while (true) {
      std::string candidate = "_" + std::to_string(++anon_counter_);
      if (!clause_var_names_.count(candidate)) {
        clause_var_names_.insert(candidate);
        return candidate;
      }
    }
  }

  Lexer lexer_;
  ParseOptions opts_;
  Token current_;
  std::set<std::string> clause_var_names_;
  int anon_counter_ = 0;
};

}  // namespace

ParsedUnit parse_unit(const std::string& text, const ParseOptions& opts) {
  Parser p(text, opts);
  return p.unit();
}

Program parse_program(const std::string& text, const ParseOptions& opts) {
  ParsedUnit unit = parse_unit(text, opts);
  if (!unit.queries.empty()) {
    throw ParseError(1, 1, "query clause not allowed in a program");
  }
  return std::move(unit.program);
}

Query parse_query(const std::string& text) {
  Parser p(text, ParseOptions{});
  return p.query_only();
}

Term parse_term_text(const std::string& text) {
  Parser p(text, ParseOptions{});
  return p.term_only();
}

}  // namespace caseforge
