#include "cfx/bench.hpp"

#include "cfx/encode.hpp"
#include "cfx/errors.hpp"
#include "cfx/explain.hpp"
#include "cfx/mcs.hpp"
#include "cfx/model.hpp"
#include "cfx/obdd.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cfx {

namespace {

double elapsed_ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

std::uint64_t cell_seed(std::uint64_t seed, int n, int index) {
  // splitmix64 over (seed, n, index): per-cell streams independent of the
  // sizes list so the same (seed, n, index) always yields the same model
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(n) * 1000 +
                                                    static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Instance random_instance(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance x(static_cast<std::size_t>(n));
  for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1);
  return x;
}

BenchRecord run_cell(int n, std::uint64_t seed, const BenchOptions& options) {
  BenchRecord record;
  record.n = n;
  record.seed = seed;

  const NbcModel model = generate_synthetic(n, seed);
  const Instance x = random_instance(n, seed ^ 0x5851f42d4c957f2dull);

  const Obdd d = compile(model);
  record.obdd_nodes = d.size();
  record.cnf_clauses = count_zero_paths(d);

  const Obdd needed = predict(model, x) == 0 ? d : negate(d);
  if (record.cnf_clauses > options.clause_cap ||
      count_zero_paths(needed) > options.clause_cap) {
    record.aborted = true;
    return record;
  }

  const auto encode_start = std::chrono::steady_clock::now();
  const CnfFormula cnf = encode_function(d);
  record.encode_time_ms = elapsed_ms_since(encode_start);

  McsProblem problem;
  problem.hard = predict(model, x) == 0 ? cnf : encode_function(needed);
  problem.soft = encode_instance(x);

  const auto enumerate_start = std::chrono::steady_clock::now();
  const McsEnumeration enumeration = enumerate_mcs(problem);
  record.enumerate_time_ms = elapsed_ms_since(enumerate_start);
  record.mcs_count = enumeration.sets.size();

  if (record.enumerate_time_ms > 60'000.0)
    std::cerr << "warning: MCS enumeration for n=" << n << " seed=" << seed
              << " took " << record.enumerate_time_ms / 1000.0 << " s\n";
  return record;
}

} // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& options) {
  if (options.per_size < 1) throw std::invalid_argument("per-size must be >= 1");
  if (options.sizes.empty()) throw std::invalid_argument("no sizes given");
  for (int n : options.sizes)
    if (n < 1 || n > 25)
      throw std::invalid_argument("size " + std::to_string(n) + " outside 1..25");

  std::vector<BenchRecord> records;
  for (int n : options.sizes) {
    for (int k = 0; k < options.per_size; ++k) {
      BenchRecord record = run_cell(n, cell_seed(options.seed, n, k), options);
      if (options.zero_timings) {
        record.encode_time_ms = 0.0;
        record.enumerate_time_ms = 0.0;
      }
      records.push_back(record);
    }
  }
  return records;
}

namespace {

std::string format_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

} // namespace

std::string bench_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "n_vars,obdd_size,cnf_size,encoding_runtime_ms,n_mcs,runtime_ms,seed,status\n";
  for (const BenchRecord& r : records) {
    out << r.n << ',' << r.obdd_nodes << ',' << r.cnf_clauses << ','
        << format_ms(r.encode_time_ms) << ',' << r.mcs_count << ','
        << format_ms(r.enumerate_time_ms) << ',' << r.seed << ','
        << (r.aborted ? "clause_cap_exceeded" : "ok") << '\n';
  }
  return out.str();
}

std::vector<BenchRecord> bench_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "n_vars,obdd_size,cnf_size,encoding_runtime_ms,n_mcs,runtime_ms,seed,status")
    throw ParseError("line 1: bad bench CSV header");
  std::vector<BenchRecord> records;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> values;
    while (std::getline(fields, field, ',')) values.push_back(field);
    if (values.size() != 8)
      throw ParseError("line " + std::to_string(line_number) + ": expected 8 fields");
    try {
      BenchRecord r;
      r.n = std::stoi(values[0]);
      r.obdd_nodes = std::stoull(values[1]);
      r.cnf_clauses = std::stoull(values[2]);
      r.encode_time_ms = std::stod(values[3]);
      r.mcs_count = std::stoull(values[4]);
      r.enumerate_time_ms = std::stod(values[5]);
      r.seed = std::stoull(values[6]);
      if (values[7] != "ok" && values[7] != "clause_cap_exceeded")
        throw ParseError("");
      r.aborted = values[7] == "clause_cap_exceeded";
      records.push_back(r);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_number) + ": malformed bench row");
    }
  }
  return records;
}

void print_bench_averages(const std::vector<BenchRecord>& records, std::ostream& out) {
  std::map<int, std::vector<const BenchRecord*>> by_size;
  for (const BenchRecord& r : records)
    if (!r.aborted) by_size[r.n].push_back(&r);

  out << std::left << std::setw(8) << "n" << std::setw(12) << "obdd_size"
      << std::setw(12) << "cnf_size" << std::setw(14) << "encode_ms"
      << std::setw(10) << "mcs" << std::setw(14) << "enumerate_ms" << '\n';
  for (const auto& [n, rows] : by_size) {
    double nodes = 0, clauses = 0, encode_ms = 0, mcs = 0, enumerate_ms = 0;
    for (const BenchRecord* r : rows) {
      nodes += static_cast<double>(r->obdd_nodes);
      clauses += static_cast<double>(r->cnf_clauses);
      encode_ms += r->encode_time_ms;
      mcs += static_cast<double>(r->mcs_count);
      enumerate_ms += r->enumerate_time_ms;
    }
    const double count = static_cast<double>(rows.size());
    out << std::left << std::setw(8) << n << std::fixed << std::setprecision(1)
        << std::setw(12) << nodes / count << std::setw(12) << clauses / count
        << std::setprecision(3) << std::setw(14) << encode_ms / count
        << std::setprecision(1) << std::setw(10) << mcs / count
        << std::setprecision(3) << std::setw(14) << enumerate_ms / count << '\n';
  }
}

} // namespace cfx
