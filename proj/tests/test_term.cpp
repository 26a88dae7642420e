#include "caseforge/term.hpp"

#include "doctest.h"

using namespace caseforge;

TEST_CASE("lexical classes") {
  CHECK(is_atom_name("arducopter_software"));
  CHECK(is_atom_name("fit_for_purpose"));
  CHECK(is_atom_name("claimStmt"));
  CHECK_FALSE(is_atom_name("C29"));
  CHECK_FALSE(is_atom_name("not allowed"));
  CHECK_FALSE(is_atom_name(""));

  CHECK(is_variable_name("X"));
  CHECK(is_variable_name("_Desc"));
  CHECK(is_variable_name("Application"));
  CHECK_FALSE(is_variable_name("x"));
  CHECK_FALSE(is_variable_name(""));
}

TEST_CASE("term equality and ordering") {
  Term a = Term::atom("a");
  Term b = Term::atom("b");
  Term x = Term::var("X");
  Term f = Term::compound("f", {a, x});
  Term l = Term::list({a, b});

  CHECK(a == Term::atom("a"));
  CHECK(a != b);
  CHECK(f == Term::compound("f", {Term::atom("a"), Term::var("X")}));
  CHECK(f != Term::compound("f", {Term::atom("a"), Term::var("Y")}));
  CHECK(l == Term::list({Term::atom("a"), Term::atom("b")}));
  CHECK((a < b));

  CHECK(a.is_ground());
  CHECK_FALSE(f.is_ground());
  CHECK(l.is_ground());

  std::set<std::string> vars;
  f.collect_variables(vars);
  CHECK(vars == std::set<std::string>{"X"});
}

TEST_CASE("rule safety") {
  // p(X) :- q(X).  is safe
  Rule safe;
  safe.head = make_literal("p", {Term::var("X")});
  safe.body.push_back({false, make_literal("q", {Term::var("X")})});
  CHECK(unsafe_variables(safe).empty());

  // p(X) :- not q(X).  X has no positive binder
  Rule unsafe;
  unsafe.head = make_literal("p", {Term::var("X")});
  unsafe.body.push_back({true, make_literal("q", {Term::var("X")})});
  auto vars = unsafe_variables(unsafe);
  REQUIRE(vars.size() == 1);
  CHECK(vars[0] == "X");

  Program p;
  p.rules.push_back(safe);
  p.rules.push_back(unsafe);
  auto violations = safety_violations(p);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule_index == 1);
  CHECK(violations[0].variable == "X");
}

TEST_CASE("classical consistency reduction adds one constraint per dual-sign predicate") {
  Program p;
  Rule f1;
  f1.head = make_literal("p", {Term::atom("a")});
  Rule f2;
  f2.head = make_neg_literal("p", {Term::atom("a")});
  Rule f3;
  f3.head = make_literal("q", {Term::atom("a")});
  p.rules = {f1, f2, f3};

  Program extended = with_classical_consistency(p);
  REQUIRE(extended.rules.size() == 4);
  const Rule& constraint = extended.rules.back();
  CHECK(constraint.is_constraint());
  REQUIRE(constraint.body.size() == 2);
  CHECK(constraint.body[0].lit.predicate == "p");
  CHECK_FALSE(constraint.body[0].lit.classical_neg);
  CHECK(constraint.body[1].lit.classical_neg);
}
