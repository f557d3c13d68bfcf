#pragma once

#include "cfx/cnf.hpp"
#include "cfx/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace cfx {

/// Hard/soft clause split for correction-subset enumeration. Soft clauses
/// must be unit clauses over pairwise distinct variables (an instance
/// encoding). Features in `immutable` are hardened before enumeration and
/// can never appear in a correction subset; `costs` maps variables to
/// positive violation costs (absent = 1).
struct McsProblem {
  CnfFormula hard;
  std::vector<Clause> soft;
  std::map<int, Rational> costs;
  std::set<int> immutable;
};

/// A minimal correction subset: removing these soft clauses restores
/// satisfiability, and no proper subset does.
struct Mcs {
  std::vector<int> features; // soft variables, ascending
  Rational cost;
  bool operator==(const Mcs&) const = default;
};

struct McsEnumeration {
  std::vector<Mcs> sets;
  bool complete = false;      // false only when max_count stopped the loop
  std::uint64_t sat_calls = 0;
  std::uint64_t iterations = 0; // outer loop rounds, <= |sets| + 1
};

/// Enumerates every MCS of the problem (grow-and-block): repeatedly solve
/// the hard clauses plus all blocking clauses, grow the satisfied softs into
/// a maximal satisfiable set, emit the complement, and block it and all its
/// supersets with the disjunction of its literals. Soft clauses being units
/// over distinct variables, blocking clauses are expressed directly over
/// feature literals. Output sorted by (cost, cardinality, lexicographic).
///
/// Throws NoCounterfactualError when the hard clauses alone are
/// unsatisfiable. Returns an empty list when hard and soft are satisfiable
/// together. Stops early, with complete = false, when max_count is reached.
McsEnumeration enumerate_mcs(const McsProblem& problem,
                             std::optional<std::size_t> max_count = {});

/// Independent oracle: tries all subsets of soft variables in increasing
/// cardinality, keeps the subset-minimal correction sets, same sort order
/// as enumerate_mcs. Refuses problems with more than 20 soft clauses.
std::vector<Mcs> brute_force_mcs(const McsProblem& problem);

} // namespace cfx
