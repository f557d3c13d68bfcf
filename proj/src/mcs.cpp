#include "cfx/mcs.hpp"

#include "cfx/errors.hpp"
#include "cfx/sat.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cfx {

namespace {

struct SoftUnit {
  int var;
  Lit lit;
};

Rational cost_of(const McsProblem& problem, int var) {
  auto it = problem.costs.find(var);
  return it == problem.costs.end() ? Rational(1) : it->second;
}

// Validates the problem and hardens immutable features: their unit clauses
// join the hard set and leave the soft set.
std::pair<CnfFormula, std::vector<SoftUnit>> split_problem(const McsProblem& problem) {
  CnfFormula hard = problem.hard;
  std::vector<SoftUnit> soft;
  std::vector<char> seen(static_cast<std::size_t>(hard.num_vars) + 1, 0);
  for (const Clause& clause : problem.soft) {
    if (clause.size() != 1)
      throw std::invalid_argument("soft clauses must be unit clauses");
    const int var = var_of(clause[0]);
    if (var < 1 || var > hard.num_vars)
      throw std::invalid_argument("soft variable out of range: " + std::to_string(var));
    if (seen[var])
      throw std::invalid_argument("soft variables must be pairwise distinct");
    seen[var] = 1;
    if (problem.immutable.count(var))
      hard.clauses.push_back(clause);
    else
      soft.push_back({var, clause[0]});
  }
  for (int var : problem.immutable)
    if (var < 1 || var > hard.num_vars || !seen[var])
      throw std::invalid_argument("immutable feature " + std::to_string(var) +
                                  " is not a soft variable");
  for (const auto& [var, cost] : problem.costs) {
    if (var < 1 || var > hard.num_vars || !seen[var])
      throw std::invalid_argument("cost refers to non-soft variable " +
                                  std::to_string(var));
    if (cost <= 0) throw std::invalid_argument("costs must be positive");
  }
  std::sort(soft.begin(), soft.end(),
            [](const SoftUnit& a, const SoftUnit& b) { return a.var < b.var; });
  return {std::move(hard), std::move(soft)};
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_result(std::vector<Mcs>& sets) {
  std::sort(sets.begin(), sets.end(), [](const Mcs& a, const Mcs& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.features.size() != b.features.size())
      return a.features.size() < b.features.size();
    return lex_less(a.features, b.features);
  });
}

} // namespace

McsEnumeration enumerate_mcs(const McsProblem& problem,
                             std::optional<std::size_t> max_count) {
  auto [hard, soft] = split_problem(problem);
  McsEnumeration result;

  auto call = [&result](const CnfFormula& f, const std::vector<Lit>& assumptions = {}) {
    ++result.sat_calls;
    return solve(f, assumptions);
  };

  if (!call(hard))
    throw NoCounterfactualError("hard clauses are unsatisfiable on their own");

  // hard accumulates one blocking clause per emitted MCS; each excludes the
  // set and all of its supersets from later candidates.
  while (!max_count || result.sets.size() < *max_count) {
    ++result.iterations;
    auto model = call(hard);
    if (!model) {
      result.complete = true;
      break;
    }

    auto satisfied_by = [](const Assignment& m, const SoftUnit& u) {
      return (m[u.var - 1] != 0) == (u.lit > 0);
    };

    std::vector<Lit> kept;
    std::vector<SoftUnit> falsified;
    for (const SoftUnit& unit : soft) {
      if (satisfied_by(*model, unit))
        kept.push_back(unit.lit);
      else
        falsified.push_back(unit);
    }

    // Grow the satisfied softs into a maximal satisfiable set, ascending
    // variable order; adopting each new model lets later units join without
    // a solver call.
    std::vector<SoftUnit> correction;
    for (const SoftUnit& unit : falsified) {
      if (satisfied_by(*model, unit)) {
        kept.push_back(unit.lit);
        continue;
      }
      std::vector<Lit> assumptions = kept;
      assumptions.push_back(unit.lit);
      if (auto grown = call(hard, assumptions)) {
        kept.push_back(unit.lit);
        model = std::move(grown);
      } else {
        correction.push_back(unit);
      }
    }

    if (correction.empty()) {
      // hard and soft are satisfiable together: no correction needed
      result.complete = true;
      break;
    }

    Mcs mcs;
    Clause blocking;
    mcs.cost = 0;
    for (const SoftUnit& unit : correction) {
      mcs.features.push_back(unit.var);
      mcs.cost += cost_of(problem, unit.var);
      blocking.push_back(unit.lit);
    }
    result.sets.push_back(std::move(mcs));
    hard.clauses.push_back(std::move(blocking));
  }

  sort_result(result.sets);
  return result;
}

std::vector<Mcs> brute_force_mcs(const McsProblem& problem) {
  auto [hard, soft] = split_problem(problem);
  if (soft.size() > 20)
    throw std::invalid_argument("brute_force_mcs refuses more than 20 soft clauses");

  if (!solve(hard))
    throw NoCounterfactualError("hard clauses are unsatisfiable on their own");

  const std::size_t m = soft.size();
  std::vector<std::uint32_t> found_masks;
  std::vector<Mcs> result;

  // All subsets by increasing cardinality; a subset strictly containing an
  // already-found correction set cannot be minimal.
  std::vector<std::vector<std::uint32_t>> by_cardinality(m + 1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask)
    by_cardinality[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);

  for (std::size_t cardinality = 0; cardinality <= m; ++cardinality) {
    for (std::uint32_t mask : by_cardinality[cardinality]) {
      bool superset = false;
      for (std::uint32_t prior : found_masks)
        if ((prior & mask) == prior) { superset = true; break; }
      if (superset) continue;

      std::vector<Lit> assumptions;
      for (std::size_t i = 0; i < m; ++i)
        if (!(mask & (std::uint32_t{1} << i))) assumptions.push_back(soft[i].lit);
      if (!solve(hard, assumptions)) continue;

      Mcs mcs;
      mcs.cost = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (std::uint32_t{1} << i)) {
          mcs.features.push_back(soft[i].var);
          mcs.cost += cost_of(problem, soft[i].var);
        }
      }
      if (!mcs.features.empty()) result.push_back(std::move(mcs));
      found_masks.push_back(mask);
    }
  }

  sort_result(result);
  return result;
}

} // namespace cfx
