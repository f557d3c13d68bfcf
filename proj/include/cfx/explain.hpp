#pragma once

#include "cfx/cnf.hpp"
#include "cfx/mcs.hpp"
#include "cfx/model.hpp"
#include "cfx/obdd.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cfx {

/// A minimal set of feature flips that inverts the prediction.
/// flip_features holds 1-based variable indices (feature position + 1).
struct Counterfactual {
  std::vector<int> flip_features;
  Instance resulting_instance;
  Rational cost;
};

enum class Direction { ToPositive, ToNegative };

struct ExplanationReport {
  Instance instance;
  int predicted = 0;
  Direction direction = Direction::ToPositive; // which inversion was sought
  std::vector<Counterfactual> counterfactuals; // (cost, cardinality, lex) order
  std::size_t hard_clause_count = 0;
  std::uint64_t sat_calls = 0;
  double elapsed_ms = 0.0;
  bool complete = true;
};

struct ExplainOptions {
  std::map<int, Rational> costs; // 1-based variable -> positive cost
  std::set<int> immutable;       // 1-based variables excluded from flips
  std::optional<std::size_t> max_mcs;
};

/// Entry i inverted iff i+1 is in flips (1-based); all others preserved.
Instance apply_flips(const Instance& x, const std::vector<int>& flips);

/// Counterfactual generation for one instance: enumerate the MCSs of the
/// instance's unit clauses against cnf_pos when the prediction is 0, against
/// cnf_neg when it is 1, and read each MCS directly as a flip set. Every
/// emitted counterfactual is re-checked against the diagram (the flipped
/// instance must evaluate to the opposite class); a failure aborts with
/// std::logic_error. Requires cnf_pos == encode_function(d) and
/// cnf_neg == encode_function(negate(d)).
ExplanationReport explain(const NbcModel& model, const Obdd& d,
                          const CnfFormula& cnf_pos, const CnfFormula& cnf_neg,
                          const Instance& x, const ExplainOptions& options = {});

/// Diagram plus both clausal encodings; built once per classifier and reused
/// across instances.
struct CompiledClassifier {
  Obdd diagram;
  CnfFormula cnf_pos;
  CnfFormula cnf_neg;
};

CompiledClassifier compile_classifier(const NbcModel& model);

/// Stable content hash of the canonical model serialization (FNV-1a 64).
std::uint64_t model_hash(const NbcModel& model);

/// Same as compile_classifier, but the two CNFs are persisted under
/// cache_dir keyed by model_hash and reloaded on later calls. The diagram
/// is always recompiled (it has no persistent form). Stale or mismatched
/// cache entries are rebuilt.
CompiledClassifier load_or_compile(const NbcModel& model,
                                   const std::filesystem::path& cache_dir);

/// Report as structured JSON (see README); zero_elapsed replaces the wall
/// clock field with 0 so outputs can be compared byte-for-byte.
std::string report_to_json(const ExplanationReport& report,
                           const NbcModel& model, bool zero_elapsed = false);

} // namespace cfx
