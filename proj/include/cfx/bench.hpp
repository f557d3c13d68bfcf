#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cfx {

/// One synthetic pipeline run: generate a classifier, compile it, encode the
/// decision function, and enumerate the counterfactual MCSs of one random
/// instance.
struct BenchRecord {
  int n = 0;
  std::uint64_t obdd_nodes = 0;   // reachable nodes, sinks included
  std::uint64_t cnf_clauses = 0;  // clauses of the positive encoding
  double encode_time_ms = 0.0;
  std::uint64_t mcs_count = 0;
  double enumerate_time_ms = 0.0;
  std::uint64_t seed = 0;
  bool aborted = false; // clause cap exceeded; mcs fields are zero
};

struct BenchOptions {
  std::vector<int> sizes;          // each within 1..25
  int per_size = 5;
  std::uint64_t seed = 0;
  std::uint64_t clause_cap = 1'000'000;
  bool zero_timings = false;       // emit 0 for time fields (reproducible output)
};

std::vector<BenchRecord> run_bench(const BenchOptions& options);

/// CSV with a header row in the column order of the size/runtime table
/// (true counts per row, no aggregation), LF endings.
std::string bench_to_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> bench_from_csv(const std::string& text);

/// Per-size averages over non-aborted rows, same column order.
void print_bench_averages(const std::vector<BenchRecord>& records, std::ostream& out);

} // namespace cfx
