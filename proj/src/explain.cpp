#include "cfx/explain.hpp"

#include "cfx/encode.hpp"
#include "cfx/errors.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cfx {

Instance apply_flips(const Instance& x, const std::vector<int>& flips) {
  Instance result = x;
  for (int var : flips) {
    if (var < 1 || var > static_cast<int>(x.size()))
      throw std::invalid_argument("flip index " + std::to_string(var) +
                                  " out of range 1.." + std::to_string(x.size()));
    result[var - 1] ^= 1;
  }
  return result;
}

ExplanationReport explain(const NbcModel& model, const Obdd& d,
                          const CnfFormula& cnf_pos, const CnfFormula& cnf_neg,
                          const Instance& x, const ExplainOptions& options) {
  const auto start = std::chrono::steady_clock::now();

  ExplanationReport report;
  report.instance = x;
  report.predicted = predict(model, x);
  report.direction = report.predicted == 0 ? Direction::ToPositive
                                           : Direction::ToNegative;

  McsProblem problem;
  problem.hard = report.predicted == 0 ? cnf_pos : cnf_neg;
  problem.soft = encode_instance(x);
  problem.costs = options.costs;
  problem.immutable = options.immutable;
  report.hard_clause_count = problem.hard.clauses.size();

  McsEnumeration enumeration = enumerate_mcs(problem, options.max_mcs);
  report.sat_calls = enumeration.sat_calls;
  report.complete = enumeration.complete;

  const int original = evaluate(d, x);
  for (Mcs& mcs : enumeration.sets) {
    Counterfactual cf;
    cf.flip_features = std::move(mcs.features);
    cf.resulting_instance = apply_flips(x, cf.flip_features);
    cf.cost = std::move(mcs.cost);
    if (evaluate(d, cf.resulting_instance) != 1 - original)
      throw std::logic_error("internal consistency: correction subset does not "
                             "invert the diagram's prediction");
    report.counterfactuals.push_back(std::move(cf));
  }

  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

CompiledClassifier compile_classifier(const NbcModel& model) {
  CompiledClassifier out;
  out.diagram = compile(model);
  out.cnf_pos = encode_function(out.diagram);
  out.cnf_neg = encode_function(negate(out.diagram));
  return out;
}

std::uint64_t model_hash(const NbcModel& model) {
  // FNV-1a 64 over the canonical serialization: stable across runs and
  // platforms, unlike std::hash.
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize_model(model)) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

namespace {

std::optional<CnfFormula> try_load_cnf(const std::filesystem::path& path, int num_vars) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    CnfFormula f = from_dimacs(buffer.str());
    if (f.num_vars != num_vars) return std::nullopt; // stale entry
    return f;
  } catch (const ParseError&) {
    return std::nullopt; // corrupt entry: rebuild
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

} // namespace

CompiledClassifier load_or_compile(const NbcModel& model,
                                   const std::filesystem::path& cache_dir) {
  std::filesystem::create_directories(cache_dir);
  std::ostringstream key;
  key << std::hex << model_hash(model);
  const auto pos_path = cache_dir / (key.str() + ".f.cnf");
  const auto neg_path = cache_dir / (key.str() + ".fneg.cnf");

  CompiledClassifier out;
  out.diagram = compile(model);
  auto cnf_pos = try_load_cnf(pos_path, model.n());
  auto cnf_neg = try_load_cnf(neg_path, model.n());
  if (cnf_pos && cnf_neg) {
    out.cnf_pos = std::move(*cnf_pos);
    out.cnf_neg = std::move(*cnf_neg);
    return out;
  }
  out.cnf_pos = encode_function(out.diagram);
  out.cnf_neg = encode_function(negate(out.diagram));
  write_text(pos_path, to_dimacs(out.cnf_pos));
  write_text(neg_path, to_dimacs(out.cnf_neg));
  return out;
}

std::string report_to_json(const ExplanationReport& report,
                           const NbcModel& model, bool zero_elapsed) {
  nlohmann::ordered_json j;
  j["instance"] = report.instance;
  j["prediction"] = report.predicted;
  j["direction"] =
      report.direction == Direction::ToPositive ? "to_positive" : "to_negative";
  nlohmann::ordered_json counterfactuals = nlohmann::ordered_json::array();
  for (const Counterfactual& cf : report.counterfactuals) {
    nlohmann::ordered_json entry;
    std::vector<std::string> names;
    for (int var : cf.flip_features)
      names.push_back(model.feature_names.at(static_cast<std::size_t>(var) - 1));
    entry["flipped_features"] = names;
    entry["resulting_instance"] = cf.resulting_instance;
    entry["cost"] = to_string(cf.cost);
    counterfactuals.push_back(std::move(entry));
  }
  j["counterfactuals"] = std::move(counterfactuals);
  j["stats"] = {{"hard_clauses", report.hard_clause_count},
                {"sat_calls", report.sat_calls},
                {"elapsed_ms", zero_elapsed ? 0.0 : report.elapsed_ms}};
  j["complete"] = report.complete;
  return j.dump(2) + "\n";
}

} // namespace cfx
