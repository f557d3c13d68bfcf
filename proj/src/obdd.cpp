#include "cfx/obdd.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace cfx {

namespace {

void visit_reachable(const Obdd& d, NodeId id, std::vector<char>& seen) {
  if (seen[id]) return;
  seen[id] = 1;
  if (!d.is_sink(id)) {
    visit_reachable(d, d.nodes[id].lo, seen);
    visit_reachable(d, d.nodes[id].hi, seen);
  }
}

std::vector<char> reachable_mask(const Obdd& d) {
  std::vector<char> seen(d.nodes.size(), 0);
  visit_reachable(d, d.root, seen);
  return seen;
}

} // namespace

std::size_t Obdd::size() const {
  std::vector<char> seen(nodes.size(), 0);
  visit_reachable(*this, root, seen);
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
}

namespace {

// Suffix-product sets larger than this fall back to memoizing on the exact
// accumulated odds instead of on cut-point intervals; the shallow levels
// where that happens have few distinct prefixes anyway.
constexpr std::size_t kSuffixBudget = std::size_t{1} << 18;

class Compiler {
public:
  Compiler(const NbcModel& model, const std::vector<int>& ordering)
      : n_(model.n()), tau_(model.threshold_odds()) {
    d_.num_vars = n_;
    d_.ordering = ordering;
    d_.nodes.push_back({n_ + 1, Obdd::kZeroSink, Obdd::kZeroSink});
    d_.nodes.push_back({n_ + 1, Obdd::kOneSink, Obdd::kOneSink});

    ratio_.resize(n_ + 1);
    for (int level = 1; level <= n_; ++level) {
      const int feature = ordering[level - 1];
      ratio_[level][0] = model.ratio(feature, 0);
      ratio_[level][1] = model.ratio(feature, 1);
    }
    build_cut_points(model.prior_odds());
    memo_idx_.resize(n_ + 1);
    memo_exact_.resize(n_ + 1);
    d_.root = build(1, model.prior_odds());
  }

  Obdd take() { return std::move(d_); }

private:
  // Reachable window of the accumulated odds A at each level, then the
  // per-level sorted cut points {tau/s : s a suffix product}, bottom-up.
  // Cuts outside a level's window compare identically against every
  // reachable A there, and dropping a suffix product keeps all products
  // derived from it outside the shallower windows too, so pruning never
  // changes which prefixes get merged.
  void build_cut_points(const Rational& prior_odds) {
    std::vector<Rational> window_lo(n_ + 2), window_hi(n_ + 2);
    window_lo[1] = window_hi[1] = prior_odds;
    for (int level = 1; level <= n_; ++level) {
      const auto [rmin, rmax] = std::minmax(ratio_[level][0], ratio_[level][1]);
      window_lo[level + 1] = window_lo[level] * rmin;
      window_hi[level + 1] = window_hi[level] * rmax;
    }

    cuts_.resize(n_ + 1);
    use_cuts_.assign(n_ + 1, false);
    std::vector<Rational> suffix{Rational(1)};
    for (int level = n_; level >= 1; --level) {
      if (suffix.size() * 2 > kSuffixBudget) break; // exact-A memo above here
      std::vector<Rational> next;
      next.reserve(suffix.size() * 2);
      for (const Rational& s : suffix) {
        next.push_back(ratio_[level][0] * s);
        next.push_back(ratio_[level][1] * s);
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      // keep s iff window_lo < tau/s <= window_hi, i.e. tau/hi <= s < tau/lo
      const Rational s_min = tau_ / window_hi[level];
      const Rational s_max = tau_ / window_lo[level];
      auto first = std::lower_bound(next.begin(), next.end(), s_min);
      auto last = std::lower_bound(first, next.end(), s_max);
      next.assign(first, last);

      cuts_[level].reserve(next.size());
      for (auto it = next.rbegin(); it != next.rend(); ++it)
        cuts_[level].push_back(tau_ / *it); // s descending -> cuts ascending
      use_cuts_[level] = true;
      suffix = std::move(next);
    }
  }

  NodeId intern(int level, NodeId lo, NodeId hi) {
    assert(d_.nodes.size() < (std::uint64_t{1} << 29));
    const std::uint64_t key = (std::uint64_t(level) << 58) |
                              (std::uint64_t(lo) << 29) | std::uint64_t(hi);
    auto [it, inserted] = unique_.try_emplace(key, NodeId(d_.nodes.size()));
    if (inserted) d_.nodes.push_back({level, lo, hi});
    return it->second;
  }

  NodeId build(int level, const Rational& odds) {
    if (level == n_ + 1) return odds >= tau_ ? Obdd::kOneSink : Obdd::kZeroSink;

    std::size_t idx = 0;
    if (use_cuts_[level]) {
      const auto& cuts = cuts_[level];
      idx = static_cast<std::size_t>(
          std::upper_bound(cuts.begin(), cuts.end(), odds) - cuts.begin());
      if (auto it = memo_idx_[level].find(idx); it != memo_idx_[level].end())
        return it->second;
    } else {
      if (auto it = memo_exact_[level].find(odds); it != memo_exact_[level].end())
        return it->second;
    }

    const NodeId lo = build(level + 1, odds * ratio_[level][0]);
    const NodeId hi = build(level + 1, odds * ratio_[level][1]);
    const NodeId id = (lo == hi) ? lo : intern(level, lo, hi);

    if (use_cuts_[level])
      memo_idx_[level].emplace(idx, id);
    else
      memo_exact_[level].emplace(odds, id);
    return id;
  }

  int n_;
  Rational tau_;
  std::vector<std::array<Rational, 2>> ratio_; // [level][edge value]
  std::vector<std::vector<Rational>> cuts_;    // ascending per level
  std::vector<char> use_cuts_;
  Obdd d_;
  std::unordered_map<std::uint64_t, NodeId> unique_;
  std::vector<std::unordered_map<std::size_t, NodeId>> memo_idx_;
  std::vector<std::map<Rational, NodeId>> memo_exact_;
};

} // namespace

Obdd compile(const NbcModel& model) {
  std::vector<int> ordering(model.n());
  for (int i = 0; i < model.n(); ++i) ordering[i] = i;
  return compile(model, ordering);
}

Obdd compile(const NbcModel& model, const std::vector<int>& ordering) {
  const int n = model.n();
  if (static_cast<int>(ordering.size()) != n)
    throw std::invalid_argument("ordering must have exactly n entries");
  std::vector<char> seen(n, 0);
  for (int f : ordering) {
    if (f < 0 || f >= n || seen[f])
      throw std::invalid_argument("ordering must be a permutation of 0.." +
                                  std::to_string(n - 1));
    seen[f] = 1;
  }
  return Compiler(model, ordering).take();
}

int evaluate(const Obdd& d, const Instance& x) {
  if (static_cast<int>(x.size()) != d.num_vars)
    throw std::invalid_argument("instance has " + std::to_string(x.size()) +
                                " entries, diagram expects " +
                                std::to_string(d.num_vars));
  NodeId cur = d.root;
  while (!d.is_sink(cur)) {
    const Obdd::Node& node = d.nodes[cur];
    cur = x[d.feature_at(node.level)] ? node.hi : node.lo;
  }
  return static_cast<int>(cur); // sink id is its value
}

Obdd negate(const Obdd& d) {
  Obdd out = d;
  auto flip = [](NodeId id) { return id <= 1 ? NodeId(1 - id) : id; };
  for (std::size_t i = 2; i < out.nodes.size(); ++i) {
    out.nodes[i].lo = flip(out.nodes[i].lo);
    out.nodes[i].hi = flip(out.nodes[i].hi);
  }
  out.root = flip(out.root);
  return out;
}

namespace {

std::uint64_t count_models_rec(const Obdd& d, NodeId id,
                               std::unordered_map<NodeId, std::uint64_t>& memo) {
  if (d.is_sink(id)) return id; // assignments of zero remaining variables
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  const Obdd::Node& node = d.nodes[id];
  const std::uint64_t lo = count_models_rec(d, node.lo, memo)
                           << (d.nodes[node.lo].level - node.level - 1);
  const std::uint64_t hi = count_models_rec(d, node.hi, memo)
                           << (d.nodes[node.hi].level - node.level - 1);
  return memo[id] = lo + hi;
}

} // namespace

std::uint64_t count_models(const Obdd& d) {
  std::unordered_map<NodeId, std::uint64_t> memo;
  const int root_level = d.is_sink(d.root) ? d.num_vars + 1 : d.nodes[d.root].level;
  return count_models_rec(d, d.root, memo) << (root_level - 1);
}

namespace {

void zero_paths_rec(const Obdd& d, NodeId id, PathTerm& path,
                    std::vector<PathTerm>& out) {
  if (id == Obdd::kZeroSink) {
    out.push_back(path);
    return;
  }
  if (id == Obdd::kOneSink) return;
  const Obdd::Node& node = d.nodes[id];
  const int feature = d.feature_at(node.level);
  path.emplace_back(feature, 1);
  zero_paths_rec(d, node.hi, path, out);
  path.back().second = 0;
  zero_paths_rec(d, node.lo, path, out);
  path.pop_back();
}

} // namespace

std::vector<PathTerm> zero_paths(const Obdd& d) {
  std::vector<PathTerm> out;
  PathTerm path;
  zero_paths_rec(d, d.root, path, out);
  return out;
}

std::uint64_t count_zero_paths(const Obdd& d) {
  std::unordered_map<NodeId, std::uint64_t> memo;
  auto rec = [&](auto&& self, NodeId id) -> std::uint64_t {
    if (d.is_sink(id)) return id == Obdd::kZeroSink ? 1 : 0;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Obdd::Node& node = d.nodes[id];
    return memo[id] = self(self, node.hi) + self(self, node.lo);
  };
  return rec(rec, d.root);
}

std::string to_dot(const Obdd& d, const std::vector<std::string>& feature_names) {
  const std::vector<char> seen = reachable_mask(d);
  std::ostringstream out;
  out << "digraph obdd {\n";
  for (NodeId id = 0; id < d.nodes.size(); ++id) {
    if (!seen[id]) continue;
    if (d.is_sink(id)) {
      out << "  n" << id << " [shape=box,label=\"" << id << "\"];\n";
    } else {
      const int feature = d.feature_at(d.nodes[id].level);
      out << "  n" << id << " [label=\"" << feature_names.at(feature) << "\"];\n";
    }
  }
  for (NodeId id = 0; id < d.nodes.size(); ++id) {
    if (!seen[id] || d.is_sink(id)) continue;
    out << "  n" << id << " -> n" << d.nodes[id].hi << " [style=solid];\n";
    out << "  n" << id << " -> n" << d.nodes[id].lo << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace cfx
