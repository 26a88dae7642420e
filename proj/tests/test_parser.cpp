#include "caseforge/parser.hpp"

#include "caseforge/printer.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace caseforge;
using caseforge::testing::ProgramGen;

TEST_CASE("single fact") {
  Program p = parse_program("p.");
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].is_fact());
  CHECK(p.rules[0].head->predicate == "p");
  CHECK(render_program(p) == "p.\n");
}

TEST_CASE("the exported claim rule for node C29 parses") {
  const std::string text = R"(
claimStmt('C29', application(none), claim( application(none),[arducopter_software],
                    [fit_for_purpose],[arducopterEnv] ), 'ArduCopter Software is fit for purpose') :-
  claimStmt('C30', application(none), claim( application(none),[arducopter_software],
                    [posses_overarching_properties],[arducopterEnv] ), 'ArduCopter Software possesses the overarching properties'),
  side_ClaimStmt('S30', application(none), claim( application(none),[overarching_properties],
                    [explored_as_means_of_compliance],[arducopterEnv] ), 'The use of overarching properties'),
  claim(application(none), [arducopter_software], [fit_for_purpose], [arducopterEnv]).
)";
  Program p = parse_program(text);
  REQUIRE(p.rules.size() == 1);
  const Rule& rule = p.rules[0];
  REQUIRE(rule.head.has_value());
  CHECK(rule.head->predicate == "claimStmt");
  CHECK(rule.head->args.size() == 4);
  CHECK(rule.head->args[0] == Term::atom("C29"));
  REQUIRE(rule.body.size() == 3);
  CHECK(rule.body[0].lit.predicate == "claimStmt");
  CHECK(rule.body[1].lit.predicate == "side_ClaimStmt");
  CHECK(rule.body[2].lit.predicate == "claim");
}

TEST_CASE("safety violation is rejected with the offending variable") {
  CHECK_THROWS_WITH_AS(parse_program("p(X) :- not q(X)."),
                       doctest::Contains("variable X"), ParseError);
}

TEST_CASE("relaxed safety admits theory templates") {
  ParseOptions opts;
  opts.check_safety = false;
  Program p = parse_program("claim(Application,[SW],[statically_analyzed],[Env]).", opts);
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].is_fact());
}

TEST_CASE("constraints, queries, NAF, classical negation, comments") {
  ParsedUnit unit = parse_unit(R"(
% a comment
p(a).
-p(b).
q :- p(a), not p(b).
:- p(X), -p(X).
?- q.
)");
  REQUIRE(unit.program.rules.size() == 4);
  CHECK(unit.program.rules[1].head->classical_neg);
  CHECK(unit.program.rules[2].body[1].naf);
  CHECK(unit.program.rules[3].is_constraint());
  REQUIRE(unit.queries.size() == 1);
  CHECK(unit.queries[0].elements[0].lit.predicate == "q");
}

TEST_CASE("quoted atoms with doubled-quote escapes round-trip") {
  Program p = parse_program("desc('it''s a test', 'C29').");
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].head->args[0] == Term::atom("it's a test"));
  std::string rendered = render_program(p);
  CHECK(rendered == "desc('it''s a test','C29').\n");
  CHECK(parse_program(rendered) == p);
}

TEST_CASE("integers are inert constants") {
  Program p = parse_program("age(tim, 19). offset(x, -3).");
  CHECK(p.rules[0].head->args[1] == Term::number(19));
  CHECK(p.rules[1].head->args[1] == Term::number(-3));
  CHECK(parse_program(render_program(p)) == p);
}

TEST_CASE("anonymous variables get distinct fresh names") {
  ParsedUnit unit = parse_unit(":- claimStmt('C13', _, _, _), unresolved_defeater('D1', 'C13').");
  const Rule& c = unit.program.rules[0];
  const auto& args = c.body[0].lit.args;
  REQUIRE(args.size() == 4);
  CHECK(args[1].is_variable());
  CHECK(args[2].is_variable());
  CHECK(args[1] != args[2]);
  CHECK(args[2] != args[3]);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_program("p(a).\nq(.\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column >= 3);
  }
}

TEST_CASE("queries are rejected by parse_program") {
  CHECK_THROWS_AS(parse_program("?- p."), ParseError);
}

TEST_CASE("parse/render round-trip on random safe programs") {
  ProgramGen gen(9001);
  for (int i = 0; i < 200; ++i) {
    Program p = gen.program();
    std::string text = render_program(p);
    Program reparsed = parse_program(text);
    REQUIRE_MESSAGE(reparsed == p, "round-trip failed for:\n" << text);
  }
}

TEST_CASE("token normalization ignores whitespace differences") {
  auto a = tokenize_program_text("p(a) :-\n    q(b).");
  auto b = tokenize_program_text("p(a):-q(b).");
  CHECK(a == b);
}
