#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "caseforge/term.hpp"

namespace caseforge::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(CASEFORGE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

/// Deterministic random terms over atoms {a,b,c}, variables {X,Y,Z},
/// functors f/1 and g/2, and short lists.
class TermGen {
public:
  explicit TermGen(std::uint32_t seed) : rng_(seed) {}

  Term term(int depth = 0) {
    int pick = depth >= 2 ? int_in(0, 3) : int_in(0, 6);
    switch (pick) {
      case 0: return Term::atom("a");
      case 1: return Term::atom("b");
      case 2: return Term::atom("c");
      case 3: return Term::var(variables_[int_in(0, 2)]);
      case 4: return Term::compound("f", {term(depth + 1)});
      case 5: return Term::compound("g", {term(depth + 1), term(depth + 1)});
      default: {
        std::vector<Term> elems;
        int n = int_in(0, 2);
        for (int i = 0; i < n; ++i) elems.push_back(term(depth + 1));
        return Term::list(std::move(elems));
      }
    }
  }

  int int_in(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng_);
  }

private:
  std::mt19937 rng_;
  const std::vector<std::string> variables_ = {"X", "Y", "Z"};
};

/// Random safe programs: positive body literals introduce variables first,
/// NAF literals and heads only reuse them.
class ProgramGen {
public:
  explicit ProgramGen(std::uint32_t seed) : rng_(seed) {}

  Program program() {
    Program p;
    int n = int_in(1, 6);
    for (int i = 0; i < n; ++i) p.rules.push_back(rule());
    return p;
  }

  Rule rule() {
    Rule r;
    std::vector<std::string> bound;
    int positives = int_in(0, 2);
    for (int i = 0; i < positives; ++i) {
      Literal lit = make_literal(predicate(), {});
      int arity = int_in(0, 2);
      for (int a = 0; a < arity; ++a) {
        if (int_in(0, 1) == 0) {
          std::string v = "X" + std::to_string(int_in(1, 3));
          bound.push_back(v);
          lit.args.push_back(Term::var(v));
        } else {
          lit.args.push_back(Term::atom(atom()));
        }
      }
      r.body.push_back({false, lit});
    }
    int nafs = int_in(0, 1);
    for (int i = 0; i < nafs; ++i) {
      Literal lit = make_literal(predicate(), {});
      int arity = int_in(0, 1);
      for (int a = 0; a < arity; ++a) lit.args.push_back(bound_or_atom(bound));
      r.body.push_back({true, lit});
    }
    Literal head = make_literal(predicate(), {});
    int arity = int_in(0, 2);
    for (int a = 0; a < arity; ++a) head.args.push_back(bound_or_atom(bound));
    r.head = head;
    return r;
  }

private:
  Term bound_or_atom(const std::vector<std::string>& bound) {
    if (!bound.empty() && int_in(0, 1) == 0) {
      return Term::var(bound[static_cast<std::size_t>(int_in(0, static_cast<int>(bound.size()) - 1))]);
    }
    return Term::atom(atom());
  }

  std::string predicate() {
    static const std::vector<std::string> preds = {"p", "q", "r", "s", "t"};
    return preds[static_cast<std::size_t>(int_in(0, static_cast<int>(preds.size()) - 1))];
  }

  std::string atom() {
    static const std::vector<std::string> atoms = {"a", "b", "c"};
    return atoms[static_cast<std::size_t>(int_in(0, 2))];
  }

  int int_in(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng_);
  }

  std::mt19937 rng_;
};

/// Stratified ground programs for the engine-vs-oracle suite: atoms get
/// random strata; rule bodies only look down (positively at or below the
/// head's stratum, under NAF strictly below).
class StratifiedGroundGen {
public:
  explicit StratifiedGroundGen(std::uint32_t seed) : rng_(seed) {}

  Program program(int max_atoms = 12, int max_rules = 20) {
    int atom_count = int_in(2, max_atoms);
    std::vector<Literal> atoms;
    std::vector<int> stratum;
    for (int i = 0; i < atom_count; ++i) {
      atoms.push_back(make_literal("a" + std::to_string(i)));
      stratum.push_back(int_in(0, 3));
    }
    Program p;
    int rules = int_in(1, max_rules);
    for (int r = 0; r < rules; ++r) {
      int head = int_in(0, atom_count - 1);
      Rule rule;
      rule.head = atoms[static_cast<std::size_t>(head)];
      int body = int_in(0, 3);
      for (int b = 0; b < body; ++b) {
        int target = int_in(0, atom_count - 1);
        bool naf = int_in(0, 3) == 0;
        if (naf && stratum[static_cast<std::size_t>(target)] >= stratum[static_cast<std::size_t>(head)]) {
          naf = false;
        }
        if (!naf && stratum[static_cast<std::size_t>(target)] > stratum[static_cast<std::size_t>(head)]) {
          continue;
        }
        rule.body.push_back({naf, atoms[static_cast<std::size_t>(target)]});
      }
      p.rules.push_back(std::move(rule));
    }
    return p;
  }

  std::vector<Literal> all_atoms(const Program& p) {
    std::set<Literal> atoms;
    for (const Rule& r : p.rules) {
      if (r.head) atoms.insert(*r.head);
      for (const BodyElement& e : r.body) atoms.insert(e.lit);
    }
    return {atoms.begin(), atoms.end()};
  }

private:
  int int_in(int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng_);
  }

  std::mt19937 rng_;
};

}  // namespace caseforge::testing
