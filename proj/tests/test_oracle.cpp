#include "caseforge/oracle.hpp"

#include "caseforge/engine.hpp"
#include "caseforge/parser.hpp"
#include "doctest.h"

using namespace caseforge;

namespace {

std::set<Literal> atoms(std::initializer_list<const char*> names) {
  std::set<Literal> out;
  for (const char* n : names) out.insert(make_literal(n));
  return out;
}

}  // namespace

TEST_CASE("a fact is its own stable model") {
  auto models = brute_force_stable_models(parse_program("p."), 4);
  REQUIRE(models.size() == 1);
  CHECK(models[0] == atoms({"p"}));
}

TEST_CASE("odd loop has no stable model") {
  auto models = brute_force_stable_models(parse_program("p :- not p.", ParseOptions{false}), 4);
  CHECK(models.empty());
}

TEST_CASE("even loop has exactly the two choice models") {
  auto models =
      brute_force_stable_models(parse_program("p :- not q. q :- not p.", ParseOptions{false}), 4);
  REQUIRE(models.size() == 2);
  std::set<std::set<Literal>> found(models.begin(), models.end());
  CHECK(found == std::set<std::set<Literal>>{atoms({"p"}), atoms({"q"})});
}

TEST_CASE("constraints filter models") {
  auto models = brute_force_stable_models(parse_program("p. :- p."), 4);
  CHECK(models.empty());

  models = brute_force_stable_models(parse_program("p :- not q. q :- not p. :- p.",
                                                   ParseOptions{false}),
                                     4);
  REQUIRE(models.size() == 1);
  CHECK(models[0] == atoms({"q"}));
}

TEST_CASE("models with both p and -p are rejected") {
  auto models = brute_force_stable_models(parse_program("p(a). -p(a)."), 4);
  CHECK(models.empty());
}

TEST_CASE("grounding over the program's own constants") {
  Program p = parse_program(R"(
assessment(design_assessment).
assessment(security_assessment).
process_complete(design_assessment).
incomplete(X) :- assessment(X), not process_complete(X).
)");
  auto models = brute_force_stable_models(p, 12);
  REQUIRE(models.size() == 1);
  CHECK(models[0].count(make_literal("incomplete", {Term::atom("security_assessment")})) == 1);
  CHECK(models[0].count(make_literal("incomplete", {Term::atom("design_assessment")})) == 0);
}

TEST_CASE("atom budget is enforced") {
  Program p = parse_program("p(a). p(b). p(c). q(X) :- p(X).");
  CHECK_THROWS_WITH_AS(brute_force_stable_models(p, 2), doctest::Contains("atom budget"),
                       EvalError);
}

TEST_CASE("negation makes the reduct sensitive to the candidate model") {
  // m = {q}: reduct keeps p :- q? No: `p :- q, not r.` with r not in m keeps
  // the positive part; q and p must both be derived.
  Program p = parse_program("q. p :- q, not r.");
  auto models = brute_force_stable_models(p, 4);
  REQUIRE(models.size() == 1);
  CHECK(models[0] == atoms({"p", "q"}));
}
