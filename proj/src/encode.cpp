#include "cfx/encode.hpp"

namespace cfx {

CnfFormula encode_function(const Obdd& d) {
  CnfFormula f;
  f.num_vars = d.num_vars;
  for (const PathTerm& path : zero_paths(d)) {
    Clause clause;
    clause.reserve(path.size());
    for (const auto& [feature, value] : path)
      clause.push_back(value ? -(feature + 1) : feature + 1);
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

std::vector<Clause> encode_instance(const Instance& x) {
  std::vector<Clause> units;
  units.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Lit var = static_cast<Lit>(i) + 1;
    units.push_back({x[i] ? var : -var});
  }
  return units;
}

} // namespace cfx
