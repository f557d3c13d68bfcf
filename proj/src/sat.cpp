#include "cfx/sat.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace cfx {

namespace {

// Iterative DPLL. Variables are 0-based internally; literal encoding is
// 2*var + sign (sign 1 = positive) for dense watch lists.
class Solver {
public:
  Solver(const CnfFormula& formula, const std::vector<Lit>& assumptions)
      : num_vars_(formula.num_vars) {
    value_.assign(num_vars_, kUnassigned);
    watches_.resize(2 * static_cast<std::size_t>(num_vars_));
    trail_.reserve(num_vars_);

    for (const Clause& input : formula.clauses) {
      Clause clause = input;
      std::sort(clause.begin(), clause.end(),
                [](Lit a, Lit b) { return var_of(a) != var_of(b)
                                       ? var_of(a) < var_of(b) : a < b; });
      clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
      bool tautology = false;
      for (std::size_t i = 0; i + 1 < clause.size(); ++i)
        if (clause[i] == -clause[i + 1]) tautology = true;
      if (tautology) continue;
      for (Lit lit : clause)
        if (var_of(lit) < 1 || var_of(lit) > num_vars_)
          throw std::invalid_argument("literal out of range: " + std::to_string(lit));

      if (clause.empty()) {
        contradiction_ = true;
        return;
      }
      if (clause.size() == 1) {
        if (!enqueue(encode(clause[0]))) {
          contradiction_ = true;
          return;
        }
        continue;
      }
      const std::size_t index = clauses_.size();
      clauses_.push_back(clause);
      watches_[encode(clause[0])].push_back(index);
      watches_[encode(clause[1])].push_back(index);
    }

    for (Lit lit : assumptions) {
      if (var_of(lit) < 1 || var_of(lit) > num_vars_)
        throw std::invalid_argument("assumption literal out of range: " +
                                    std::to_string(lit));
      if (!enqueue(encode(lit))) {
        contradiction_ = true;
        return;
      }
    }
  }

  std::optional<Assignment> search() {
    if (contradiction_ || !propagate()) return std::nullopt;
    for (;;) {
      if (static_cast<int>(trail_.size()) == num_vars_) {
        Assignment model(num_vars_);
        for (int v = 0; v < num_vars_; ++v) model[v] = value_[v] == kTrue;
        return model;
      }
      // lowest-index unassigned variable, value 0 first
      while (value_[next_var_] != kUnassigned) ++next_var_;
      decisions_.push_back({static_cast<int>(trail_.size()), next_var_, false});
      enqueue(2 * static_cast<unsigned>(next_var_)); // negative phase
      while (!propagate()) {
        if (!backtrack()) return std::nullopt;
      }
    }
  }

private:
  static constexpr std::int8_t kUnassigned = -1;
  static constexpr std::int8_t kFalse = 0;
  static constexpr std::int8_t kTrue = 1;

  struct Decision {
    int trail_size; // before the decision literal
    int var;
    bool flipped;
  };

  static unsigned encode(Lit lit) {
    return 2 * static_cast<unsigned>(var_of(lit) - 1) + (lit > 0 ? 1 : 0);
  }
  static unsigned neg(unsigned lit) { return lit ^ 1u; }
  std::int8_t lit_value(unsigned lit) const {
    const std::int8_t v = value_[lit >> 1];
    if (v == kUnassigned) return kUnassigned;
    return v == static_cast<std::int8_t>(lit & 1u) ? kTrue : kFalse;
  }

  bool enqueue(unsigned lit) {
    const std::int8_t v = lit_value(lit);
    if (v == kTrue) return true;
    if (v == kFalse) return false;
    value_[lit >> 1] = static_cast<std::int8_t>(lit & 1u);
    trail_.push_back(lit);
    return true;
  }

  // Two-watched-literal propagation to fixpoint; false on conflict.
  // watches_[x] lists the clauses currently watching literal x, so making
  // `lit` true means revisiting every clause watching its negation.
  bool propagate() {
    while (propagated_ < trail_.size()) {
      const unsigned lit = trail_[propagated_++];
      const unsigned falsified = neg(lit);
      std::vector<std::size_t>& watch_list = watches_[falsified];
      std::size_t kept = 0;
      for (std::size_t i = 0; i < watch_list.size(); ++i) {
        const std::size_t clause_index = watch_list[i];
        Clause& clause = clauses_[clause_index];
        // keep the falsified literal in slot 1
        if (encode(clause[0]) == falsified) std::swap(clause[0], clause[1]);
        if (lit_value(encode(clause[0])) == kTrue) {
          watch_list[kept++] = clause_index;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < clause.size(); ++k) {
          if (lit_value(encode(clause[k])) != kFalse) {
            std::swap(clause[1], clause[k]);
            watches_[encode(clause[1])].push_back(clause_index);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        watch_list[kept++] = clause_index;
        if (!enqueue(encode(clause[0]))) { // unit or conflicting
          for (std::size_t j = i + 1; j < watch_list.size(); ++j)
            watch_list[kept++] = watch_list[j];
          watch_list.resize(kept);
          return false;
        }
      }
      watch_list.resize(kept);
    }
    return true;
  }

  // Chronological backtracking: undo to the deepest decision whose other
  // phase is untried, flip it; false when the tree is exhausted.
  bool backtrack() {
    while (!decisions_.empty() && decisions_.back().flipped) {
      undo_to(decisions_.back().trail_size);
      decisions_.pop_back();
    }
    if (decisions_.empty()) return false;
    Decision& decision = decisions_.back();
    undo_to(decision.trail_size);
    decision.flipped = true;
    enqueue(2 * static_cast<unsigned>(decision.var) + 1); // positive phase
    return true;
  }

  void undo_to(int size) {
    while (static_cast<int>(trail_.size()) > size) {
      const unsigned lit = trail_.back();
      trail_.pop_back();
      value_[lit >> 1] = kUnassigned;
      next_var_ = std::min(next_var_, static_cast<int>(lit >> 1));
    }
    propagated_ = std::min(propagated_, trail_.size());
  }

  int num_vars_;
  bool contradiction_ = false;
  std::vector<std::int8_t> value_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::size_t>> watches_; // by encoded literal
  std::vector<unsigned> trail_;
  std::size_t propagated_ = 0;
  std::vector<Decision> decisions_;
  int next_var_ = 0;
};

} // namespace

std::optional<Assignment> solve(const CnfFormula& formula,
                                const std::vector<Lit>& assumptions) {
  return Solver(formula, assumptions).search();
}

} // namespace cfx
