#pragma once

#include "cfx/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfx {

/// DIMACS-style literal: +v means feature v is 1, -v means it is 0.
/// Variable indices are 1-based; variable v is feature position v-1.
using Lit = int;

inline int var_of(Lit lit) { return lit > 0 ? lit : -lit; }

/// Disjunction of literals. No duplicates, no complementary pair; may be
/// empty (the unsatisfiable clause).
using Clause = std::vector<Lit>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
  bool operator==(const CnfFormula&) const = default;
};

/// Total assignment over variables 1..n; value[v-1] is variable v.
using Assignment = std::vector<std::uint8_t>;

bool satisfies(const Clause& clause, const Assignment& assignment);
bool satisfies(const CnfFormula& formula, const Assignment& assignment);

/// Hard/soft clause system as read from a WCNF file. Soft clauses carry
/// their weight (the cost of violating them).
struct WcnfProblem {
  int num_vars = 0;
  CnfFormula hard;
  std::vector<Clause> soft;
  std::vector<Rational> soft_weights; // index-aligned with soft
};

/// Standard clausal text: header "p cnf <vars> <clauses>", one clause per
/// line as signed integers terminated by 0, LF endings, no comments emitted
/// (lines starting with 'c' are accepted on input). Round trips exactly,
/// clause order included.
std::string to_dimacs(const CnfFormula& f);
CnfFormula from_dimacs(const std::string& text);

/// Weighted variant: header "p wcnf <vars> <clauses> <top>", hard clauses
/// carry weight top, soft clauses their own weight. top is the smallest
/// integer exceeding the sum of soft weights. Weights are exact rationals
/// serialized canonically, so non-integral costs survive the round trip.
std::string to_wcnf(const CnfFormula& hard, const std::vector<Clause>& soft,
                    const std::vector<Rational>& soft_weights);
WcnfProblem from_wcnf(const std::string& text);

} // namespace cfx
