#pragma once

// Test-only oracles, independent of the pipeline paths they check: exhaustive
// truth tables from the exact-rational decision rule, and brute-force minimal
// flip sets computed directly on a diagram.

#include "cfx/model.hpp"
#include "cfx/obdd.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracles {

/// Fig-style four-feature admission classifier used as the worked example:
/// prior 7/10, threshold 1/2, features WE, FA, E, GPA.
inline cfx::NbcModel fig_model() {
  cfx::NbcModel m;
  m.feature_names = {"WE", "FA", "E", "GPA"};
  m.prior_pos = cfx::Rational(7, 10);
  m.threshold = cfx::Rational(1, 2);
  m.cpt = {
      {cfx::Rational(3, 10), cfx::Rational(8, 10)},
      {cfx::Rational(2, 10), cfx::Rational(7, 10)},
      {cfx::Rational(15, 100), cfx::Rational(4, 10)},
      {cfx::Rational(11, 100), cfx::Rational(97, 100)},
  };
  return m;
}

/// Instance whose bits are the low n bits of `index` (feature i = bit i).
inline cfx::Instance instance_from_index(std::uint32_t index, int n) {
  cfx::Instance x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = (index >> i) & 1u;
  return x;
}

/// All 2^n predictions via the exact-rational decision rule.
inline std::vector<int> truth_table(const cfx::NbcModel& model) {
  const int n = model.n();
  std::vector<int> table;
  table.reserve(std::size_t{1} << n);
  for (std::uint32_t index = 0; index < (std::uint32_t{1} << n); ++index)
    table.push_back(cfx::predict(model, instance_from_index(index, n)));
  return table;
}

inline cfx::Instance flip_by_mask(const cfx::Instance& x, std::uint32_t mask) {
  cfx::Instance out = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (mask & (std::uint32_t{1} << i)) out[i] ^= 1;
  return out;
}

/// Minimal flip sets inverting the diagram's prediction on x, by exhaustive
/// search over the subset lattice; 1-based feature indices, ascending, the
/// family sorted by (cardinality, lexicographic).
inline std::vector<std::vector<int>> brute_force_flip_sets(const cfx::Obdd& d,
                                                           const cfx::Instance& x) {
  const int n = d.num_vars;
  const int original = cfx::evaluate(d, x);
  std::vector<std::uint32_t> inverting;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask)
    if (cfx::evaluate(d, flip_by_mask(x, mask)) == 1 - original)
      inverting.push_back(mask);

  std::vector<std::vector<int>> result;
  for (std::uint32_t mask : inverting) {
    bool minimal = true;
    for (std::uint32_t other : inverting)
      if (other != mask && (other & mask) == other) { minimal = false; break; }
    if (!minimal) continue;
    std::vector<int> features;
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) features.push_back(i + 1);
    result.push_back(std::move(features));
  }
  std::sort(result.begin(), result.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return result;
}

/// Hand-assembled two-variable XOR diagram (not expressible as a naive Bayes
/// threshold function, so it cannot come from compile()).
inline cfx::Obdd xor_obdd() {
  cfx::Obdd d;
  d.num_vars = 2;
  d.ordering = {0, 1};
  d.nodes = {
      {3, 0, 0}, // 0-sink
      {3, 1, 1}, // 1-sink
      {2, 0, 1}, // x2
      {2, 1, 0}, // not x2
      {1, 2, 3}, // root: x1 ? not x2 : x2
  };
  d.root = 4;
  return d;
}

} // namespace oracles
