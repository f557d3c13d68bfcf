#pragma once

#include "cfx/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cfx {

using NodeId = std::uint32_t;

/// Reduced ordered binary decision diagram over the feature variables.
///
/// Nodes live in an append-only arena. Slots 0 and 1 are the 0-sink and
/// 1-sink (always present, possibly unreachable); every other node is
/// internal with a level in 1..n. Levels strictly increase along every
/// root-to-sink path, no internal node has lo == hi, and no two internal
/// nodes share (level, lo, hi) — so structural equality coincides with
/// functional equivalence for a fixed ordering.
struct Obdd {
  struct Node {
    int level;  // 1..n for internal nodes, n+1 for the sinks
    NodeId lo;  // edge taken when the level's feature is 0
    NodeId hi;  // edge taken when the level's feature is 1
    bool operator==(const Node&) const = default;
  };

  int num_vars = 0;
  std::vector<int> ordering; // ordering[level-1] = 0-based feature index
  std::vector<Node> nodes;   // nodes[0] = 0-sink, nodes[1] = 1-sink
  NodeId root = 0;

  static constexpr NodeId kZeroSink = 0;
  static constexpr NodeId kOneSink = 1;

  bool is_sink(NodeId id) const { return id <= 1; }
  int feature_at(int level) const { return ordering[level - 1]; }

  /// Number of nodes reachable from the root, sinks included.
  std::size_t size() const;

  bool operator==(const Obdd&) const = default;
};

/// One root-to-0-sink path: (feature index, value) pairs in level order.
/// Features skipped by the reduced diagram are absent. Feature indices are
/// 0-based.
using PathTerm = std::vector<std::pair<int, int>>;

/// Compiles the classifier's decision function into the canonical reduced
/// OBDD for the given ordering (a permutation of 0..n-1; defaults to the
/// declared feature order).
///
/// Interval-merging dynamic program, all arithmetic exact-rational: with
/// tau = T/(1-T) and A the running product of prior odds and chosen-edge
/// ratios, subtrees are memoized on the interval of A within the per-level
/// cut points {tau/s : s in suffix-product set S_i}. Suffix sets are pruned
/// to the reachable window of A, and levels whose pruned set would still
/// exceed a fixed budget fall back to memoizing on the exact value of A;
/// both variants produce the same canonical diagram via the uniqueness
/// table. Worst case remains exponential in n — the documented scaling
/// limit of this compilation scheme.
Obdd compile(const NbcModel& model);
Obdd compile(const NbcModel& model, const std::vector<int>& ordering);

/// Follows lo/hi edges per x from the root; linear in n.
int evaluate(const Obdd& d, const Instance& x);

/// Diagram computing 1 - f: swaps the roles of the sinks. Reducedness is
/// preserved, and negate(negate(d)) == d structurally.
Obdd negate(const Obdd& d);

/// Number of total assignments x with evaluate(d, x) = 1; one bottom-up pass
/// weighting skipped levels by powers of two.
std::uint64_t count_models(const Obdd& d);

/// Every root-to-0-sink path, hi edge explored before lo, as PathTerms.
/// The disjunction of the returned terms is exactly not-f; empty when f is
/// constant 1, a single empty term when f is constant 0.
std::vector<PathTerm> zero_paths(const Obdd& d);

/// Number of root-to-0-sink paths (= clause count of the off-set encoding)
/// without materializing them.
std::uint64_t count_zero_paths(const Obdd& d);

/// Graphviz rendering: one line per node and per edge, solid = hi edge,
/// dashed = lo edge.
std::string to_dot(const Obdd& d, const std::vector<std::string>& feature_names);

} // namespace cfx
