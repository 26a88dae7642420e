#pragma once

#include <set>
#include <vector>

#include "caseforge/term.hpp"

namespace caseforge {

/// Stable models by exhaustive enumeration: ground the program over its own
/// constants, enumerate subsets of the candidate atom base, and keep those
/// equal to the least model of their Gelfond-Lifschitz reduct that satisfy
/// every constraint. Models containing both p(t) and -p(t) are rejected.
/// Throws EvalError when the ground atom base exceeds atom_budget.
std::vector<std::set<Literal>> brute_force_stable_models(const Program& p,
                                                         std::size_t atom_budget);

}  // namespace caseforge
