#include "caseforge/substitution.hpp"

#include <vector>

#include "caseforge/parser.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace caseforge;
using caseforge::testing::TermGen;

TEST_CASE("unify binds a variable to an atom") {
  auto s = unify(Term::var("X"), Term::atom("arducopter_software"), Substitution{});
  REQUIRE(s.has_value());
  CHECK(s->apply(Term::var("X")) == Term::atom("arducopter_software"));
}

TEST_CASE("occurs check rejects X = f(X)") {
  auto s = unify(Term::var("X"), Term::compound("f", {Term::var("X")}), Substitution{});
  CHECK_FALSE(s.has_value());
}

TEST_CASE("unify claim terms, hand-checked mgu") {
  Term left = parse_term_text("claim(A,[o1],P,E)");
  Term right = parse_term_text("claim(application(none),[o1],[p1],[e1])");
  auto s = unify(left, right, Substitution{});
  REQUIRE(s.has_value());
  CHECK(s->apply(Term::var("A")) == parse_term_text("application(none)"));
  CHECK(s->apply(Term::var("P")) == parse_term_text("[p1]"));
  CHECK(s->apply(Term::var("E")) == parse_term_text("[e1]"));
}

TEST_CASE("apply on identity and partial bindings") {
  Term t = parse_term_text("f(g(X,a),[Y])");
  CHECK(Substitution{}.apply(t) == t);

  Substitution s;
  REQUIRE(s.bind("X", Term::atom("a")));
  Term applied = s.apply(parse_term_text("f(X,Y)"));
  CHECK(applied == parse_term_text("f(a,Y)"));
  // fixed under re-application
  CHECK(s.apply(applied) == applied);
}

TEST_CASE("composition law on random terms") {
  TermGen gen(7001);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.term();
    Substitution s1;
    s1.bind("X", gen.term());
    Substitution s2;
    s2.bind("Y", Term::atom("b"));
    s2.bind("Z", gen.term());
    Term via_steps = s2.apply(s1.apply(t));
    Term via_compose = Substitution::compose(s1, s2).apply(t);
    CHECK(via_steps == via_compose);
  }
}

TEST_CASE("unification is symmetric") {
  TermGen gen(7002);
  for (int i = 0; i < 500; ++i) {
    Term a = gen.term();
    Term b = gen.term();
    bool ab = unify(a, b, Substitution{}).has_value();
    bool ba = unify(b, a, Substitution{}).has_value();
    CHECK(ab == ba);
  }
}

namespace {

// Ground universe for the brute-force unifier.
std::vector<Term> ground_universe() {
  std::vector<Term> atoms = {Term::atom("a"), Term::atom("b"), Term::atom("c")};
  std::vector<Term> out = atoms;
  for (const Term& t : atoms) out.push_back(Term::compound("f", {t}));
  out.push_back(Term::compound("g", {atoms[0], atoms[1]}));
  out.push_back(Term::list({atoms[0]}));
  out.push_back(Term::list({}));
  return out;
}

// Enumerates total ground assignments over the terms' variables and keeps
// the ones that make both sides equal.
std::vector<Substitution> brute_force_unifiers(const Term& a, const Term& b) {
  std::set<std::string> var_set;
  a.collect_variables(var_set);
  b.collect_variables(var_set);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  std::vector<Term> universe = ground_universe();
  std::vector<Substitution> out;
  std::vector<std::size_t> choice(vars.size(), 0);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], universe[choice[i]]);
    if (s.apply(a) == s.apply(b)) out.push_back(s);
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++choice[i] < universe.size()) break;
      choice[i] = 0;
    }
    if (i == vars.size() || vars.empty()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("mgu generality against brute-force unifier enumeration") {
  TermGen gen(7003);
  int checked_pairs = 0;
  for (int i = 0; i < 120; ++i) {
    Term a = gen.term();
    Term b = gen.term();
    std::set<std::string> var_set;
    a.collect_variables(var_set);
    b.collect_variables(var_set);
    if (var_set.size() > 2) continue;  // keep the enumeration small

    auto mgu = unify(a, b, Substitution{});
    std::vector<Substitution> ground = brute_force_unifiers(a, b);
    if (!ground.empty()) {
      REQUIRE_MESSAGE(mgu.has_value(), "unify must succeed when a ground unifier exists");
    }
    if (mgu) {
      CHECK(mgu->apply(a) == mgu->apply(b));
      // every ground unifier factors through the mgu: u = u after mgu
      for (const Substitution& u : ground) {
        for (const std::string& v : var_set) {
          Term lhs = u.apply(mgu->apply(Term::var(v)));
          Term rhs = u.apply(Term::var(v));
          CHECK(lhs == rhs);
        }
      }
      ++checked_pairs;
    }
  }
  CHECK(checked_pairs > 20);
}

TEST_CASE("substitution restriction keeps only requested variables") {
  Substitution s;
  s.bind("X", Term::atom("a"));
  s.bind("Y", Term::atom("b"));
  Substitution r = s.restricted_to({"X"});
  CHECK(r.size() == 1);
  CHECK(r.apply(Term::var("X")) == Term::atom("a"));
  CHECK(r.apply(Term::var("Y")) == Term::var("Y"));
}
