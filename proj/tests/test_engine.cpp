#include "caseforge/engine.hpp"

#include "caseforge/oracle.hpp"
#include "caseforge/parser.hpp"
#include "caseforge/printer.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace caseforge;
using caseforge::testing::StratifiedGroundGen;

namespace {

// Re-verifies a proved tree against the program without search: the node's
// literal must match its rule head, and the children must line up with the
// rule body one to one.
bool replay(const JustificationTree& t, const Program& p) {
  if (t.status == ProofStatus::naf_holds) return true;
  if (t.status != ProofStatus::proved) return false;
  if (t.children.empty()) {
    if (!t.rule_index) return false;
    const Rule& r = p.rules[*t.rule_index];
    return r.body.empty() && unify(*r.head, t.literal, Substitution{}).has_value();
  }
  if (!t.rule_index) return false;
  const Rule& r = p.rules[*t.rule_index];
  if (!unify(*r.head, t.literal, Substitution{}).has_value()) return false;
  if (r.body.size() != t.children.size()) return false;
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    const JustificationTree& child = t.children[i];
    if (r.body[i].naf != child.naf) return false;
    if (r.body[i].lit.predicate != child.lit.predicate) return false;
    if (!child.naf && !replay(child, p)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("stratify assigns strata below negation") {
  StratifyResult s = stratify(parse_program("p :- not q. q."));
  REQUIRE(s.stratified);
  CHECK(s.strata.at("q") == 0);
  CHECK(s.strata.at("p") == 1);
}

TEST_CASE("odd loop over negation is reported with its cycle") {
  StratifyResult s = stratify(parse_program("p :- not p.", ParseOptions{false}));
  REQUIRE_FALSE(s.stratified);
  CHECK(s.cycle == std::vector<std::string>{"p"});
}

TEST_CASE("even loop over negation is reported with both predicates") {
  StratifyResult s = stratify(parse_program("p :- not q. q :- not p.", ParseOptions{false}));
  REQUIRE_FALSE(s.stratified);
  CHECK(s.cycle == std::vector<std::string>{"p", "q"});
}

TEST_CASE("solving a single fact") {
  Program p = parse_program("p.");
  std::vector<Answer> answers = solve(p, parse_query("p"));
  REQUIRE(answers.size() == 1);
  CHECK(answers[0].bindings.empty());
  CHECK(answers[0].justification.status == ProofStatus::proved);
  CHECK(answers[0].model == std::vector<Literal>{make_literal("p")});
}

TEST_CASE("incomplete assessment is found through NAF") {
  Program p = parse_program(R"(
assessment(design_assessment).
process_complete(design_assessment).
assessment(security_assessment).
incomplete(X) :- assessment(X), not process_complete(X).
)");
  std::vector<Answer> answers = solve(p, parse_query("incomplete(X)"));
  REQUIRE(answers.size() == 1);
  CHECK(answers[0].bindings.apply(Term::var("X")) == Term::atom("security_assessment"));
}

TEST_CASE("solve rejects non-stratified programs") {
  Program p = parse_program("p :- not p.", ParseOptions{false});
  CHECK_THROWS_WITH_AS(solve(p, parse_query("p")), doctest::Contains("not stratified"), EvalError);
}

TEST_CASE("solve rejects unsafe programs") {
  Program p;
  Rule r;
  r.head = make_literal("p", {Term::var("X")});
  p.rules.push_back(r);
  CHECK_THROWS_WITH_AS(solve(p, parse_query("p(a)")), doctest::Contains("unsafe"), EvalError);
}

TEST_CASE("NAF on a non-ground query literal is an error") {
  Program p = parse_program("r(a).");
  CHECK_THROWS_WITH_AS(solve(p, parse_query("not r(X)")), doctest::Contains("non-ground"),
                       EvalError);
}

TEST_CASE("depth limit") {
  std::string text;
  for (int i = 0; i < 30; ++i) {
    text += "p" + std::to_string(i) + " :- p" + std::to_string(i + 1) + ".\n";
  }
  text += "p30.\n";
  Program p = parse_program(text);
  SolveOptions opts;
  opts.depth_limit = 5;
  CHECK_THROWS_WITH_AS(solve(p, parse_query("p0"), opts), doctest::Contains("depth limit"),
                       EvalError);
  opts.depth_limit = 1000;
  CHECK(solve(p, parse_query("p0"), opts).size() == 1);
}

TEST_CASE("positive loops fail finitely and backtracking continues") {
  Program p = parse_program(R"(
p :- q.
q :- p.
p :- r.
r.
)");
  std::vector<Answer> answers = solve(p, parse_query("p"));
  REQUIRE_FALSE(answers.empty());
  CHECK(answers[0].justification.status == ProofStatus::proved);
}

TEST_CASE("prove_negation fails when the literal is provable") {
  Program p = parse_program("p.");
  CHECK_FALSE(prove_negation(p, parse_query("p")).has_value());
}

TEST_CASE("prove_negation blames the missing clause") {
  Program p = parse_program(R"(
meets_intent(arducopter_software).
is_correct(arducopter_software).
)");
  auto negation = prove_negation(p, parse_query("is_innocuous(arducopter_software)"));
  REQUIRE(negation.has_value());
  CHECK(negation->justification.status == ProofStatus::naf_holds);
  std::vector<Literal> blamed = blamed_leaves(negation->justification);
  REQUIRE(blamed.size() == 1);
  CHECK(render_literal(blamed[0]) == "is_innocuous(arducopter_software)");
  REQUIRE_FALSE(negation->justification.children.empty());
  CHECK(negation->justification.children[0].note == "no matching clause");
}

TEST_CASE("exactly one of solve / prove_negation holds for ground literals") {
  Program p = parse_program(R"(
p :- q, not r.
q.
s :- r.
)");
  for (const std::string& atom : {"p", "q", "r", "s"}) {
    bool proved = !solve(p, parse_query(atom)).empty();
    bool negated = prove_negation(p, parse_query(atom)).has_value();
    CHECK_MESSAGE(proved != negated, "duality broken for " << atom);
  }
}

TEST_CASE("constraint violations carry witnesses") {
  Program p = parse_program("safe(train). hazardous(train).");
  Program constraints = parse_program(":- safe(X), hazardous(X).");
  std::vector<ConstraintViolation> violations = check_constraints(p, constraints);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].witness.apply(Term::var("X")) == Term::atom("train"));
  CHECK(violations[0].justification.status == ProofStatus::proved);
}

TEST_CASE("no constraints, no violations") {
  Program p = parse_program("safe(train).");
  CHECK(check_constraints(p, Program{}).empty());
}

TEST_CASE("domain-specific conflict pair is detected") {
  Program p = parse_program("no_vulnerabilities(sw). residual_security_risks(sw).");
  Program constraints = parse_program(":- no_vulnerabilities(X), residual_security_risks(X).");
  CHECK(check_constraints(p, constraints).size() == 1);
}

TEST_CASE("with_classical_consistency turns p and -p into a violation") {
  Program p = parse_program("p(a). -p(a).");
  Program extended = with_classical_consistency(p);
  Program constraints;
  for (const Rule& r : extended.rules) {
    if (r.is_constraint()) constraints.rules.push_back(r);
  }
  Program facts;
  for (const Rule& r : extended.rules) {
    if (!r.is_constraint()) facts.rules.push_back(r);
  }
  REQUIRE(constraints.rules.size() == 1);
  CHECK(check_constraints(facts, constraints).size() == 1);
}

TEST_CASE("solve answers are deterministic across runs") {
  Program p = parse_program(R"(
edge(a,b). edge(b,c). edge(a,c).
path(X,Y) :- edge(X,Y).
path(X,Y) :- edge(X,Z), path(Z,Y).
)");
  SolveOptions opts;
  opts.max_answers = kAllAnswers;
  auto run1 = solve(p, parse_query("path(a,X)"), opts);
  auto run2 = solve(p, parse_query("path(a,X)"), opts);
  REQUIRE(run1.size() == run2.size());
  for (std::size_t i = 0; i < run1.size(); ++i) {
    CHECK(run1[i].bindings == run2[i].bindings);
  }
}

TEST_CASE("justification replay re-verifies proofs without search") {
  Program p = parse_program(R"(
p :- q, not r.
q :- s.
s.
)");
  std::vector<Answer> answers = solve(p, parse_query("p"));
  REQUIRE(answers.size() == 1);
  CHECK(replay(answers[0].justification, p));
}

TEST_CASE("engine matches the brute-force oracle on random stratified ground programs") {
  StratifiedGroundGen gen(424242);
  for (int i = 0; i < 150; ++i) {
    Program p = gen.program();
    auto models = brute_force_stable_models(p, 12);
    REQUIRE_MESSAGE(models.size() == 1,
                    "stratified program must have exactly one stable model:\n"
                        << render_program(p));
    const std::set<Literal>& model = models.front();
    for (const Literal& atom : gen.all_atoms(p)) {
      Query q;
      q.elements.push_back({false, atom});
      bool derivable = !solve(p, q).empty();
      bool in_model = model.count(atom) > 0;
      REQUIRE_MESSAGE(derivable == in_model,
                      "mismatch on " << render_literal(atom) << " for\n" << render_program(p));
      bool negated = prove_negation(p, q).has_value();
      REQUIRE(negated == !in_model);
    }
  }
}
