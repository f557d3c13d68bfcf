#pragma once

#include "cfx/cnf.hpp"

#include <optional>
#include <vector>

namespace cfx {

/// Complete, deterministic satisfiability decision: DPLL with two-watched-
/// literal unit propagation and chronological backtracking. Branching is
/// fixed for reproducibility — lowest-index unassigned variable, value 0
/// first, after propagation reaches a fixpoint — so identical inputs return
/// bit-identical models.
///
/// Assumptions seed the trail before search; contradictory assumptions
/// (+v and -v) yield Unsat, not an error. Returns the satisfying total
/// assignment, or nullopt when unsatisfiable.
std::optional<Assignment> solve(const CnfFormula& formula,
                                const std::vector<Lit>& assumptions = {});

} // namespace cfx
