#include "cfx/cli.hpp"

#include "cfx/bench.hpp"
#include "cfx/encode.hpp"
#include "cfx/errors.hpp"
#include "cfx/explain.hpp"
#include "cfx/mcs.hpp"
#include "cfx/model.hpp"
#include "cfx/obdd.hpp"
#include "cfx/rational.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cfx {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

NbcModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::vector<int> split_ints(const std::string& text, const std::string& what) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t consumed = 0;
      values.push_back(std::stoi(token, &consumed));
      if (consumed != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid " + what + " entry \"" + token + "\"");
    }
  }
  if (values.empty()) throw std::invalid_argument("empty " + what + " list");
  return values;
}

int feature_var(const NbcModel& model, const std::string& name) {
  for (int i = 0; i < model.n(); ++i)
    if (model.feature_names[static_cast<std::size_t>(i)] == name) return i + 1;
  throw std::invalid_argument("unknown feature name \"" + name + "\"");
}

std::optional<std::string> default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::string(xdg) + "/cfx";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::string(home) + "/.cache/cfx";
  return std::nullopt;
}

struct GenArgs {
  int features = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct CompileArgs {
  std::string model_path;
  std::string order;
  std::string dot_path;
};

struct EncodeArgs {
  std::string model_path;
  std::string out;
  bool negated = false;
};

struct PredictArgs {
  std::string model_path;
  std::string instance;
};

struct ExplainArgs {
  std::string model_path;
  std::string instance;
  std::string immutable;
  std::string costs;
  std::size_t max_mcs = 0;
  bool max_mcs_set = false;
  std::string out;
  std::string cache_dir;
  bool no_cache = false;
  bool zero_timings = false;
};

struct McsArgs {
  std::string wcnf_path;
  std::size_t max_mcs = 0;
  bool max_mcs_set = false;
};

struct BenchArgs {
  std::string sizes;
  int per_size = 5;
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t clause_cap = 1'000'000;
  bool zero_timings = false;
};

void run_gen(const GenArgs& args) {
  write_file(args.out, serialize_model(generate_synthetic(args.features, args.seed)));
}

void run_compile(const CompileArgs& args) {
  const NbcModel model = load_model(args.model_path);
  Obdd d;
  if (args.order.empty())
    d = compile(model);
  else
    d = compile(model, split_ints(args.order, "order"));
  std::cout << "nodes: " << d.size() << "\n";
  if (!args.dot_path.empty()) write_file(args.dot_path, to_dot(d, model.feature_names));
}

void run_encode(const EncodeArgs& args) {
  const NbcModel model = load_model(args.model_path);
  Obdd d = compile(model);
  if (args.negated) d = negate(d);
  write_file(args.out, to_dimacs(encode_function(d)));
}

void run_predict(const PredictArgs& args) {
  const NbcModel model = load_model(args.model_path);
  std::cout << predict(model, parse_instance(args.instance, model.n())) << "\n";
}

void run_explain(const ExplainArgs& args) {
  const NbcModel model = load_model(args.model_path);
  const Instance x = parse_instance(args.instance, model.n());

  ExplainOptions options;
  if (!args.immutable.empty()) {
    std::stringstream stream(args.immutable);
    std::string name;
    while (std::getline(stream, name, ','))
      options.immutable.insert(feature_var(model, name));
  }
  if (!args.costs.empty()) {
    std::stringstream stream(args.costs);
    std::string entry;
    while (std::getline(stream, entry, ',')) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("cost entry \"" + entry + "\" is not NAME=RATIONAL");
      Rational cost;
      try {
        cost = parse_rational(entry.substr(eq + 1));
      } catch (const ParseError&) {
        throw std::invalid_argument("cost entry \"" + entry + "\": malformed rational");
      }
      if (cost <= 0)
        throw std::invalid_argument("cost entry \"" + entry + "\": must be positive");
      options.costs[feature_var(model, entry.substr(0, eq))] = cost;
    }
  }
  if (args.max_mcs_set) options.max_mcs = args.max_mcs;

  std::optional<std::string> cache =
      args.cache_dir.empty() ? default_cache_dir() : std::optional(args.cache_dir);
  if (args.no_cache) cache.reset();

  const CompiledClassifier compiled =
      cache ? load_or_compile(model, *cache) : compile_classifier(model);

  const ExplanationReport report =
      explain(model, compiled.diagram, compiled.cnf_pos, compiled.cnf_neg, x, options);
  if (report.elapsed_ms > 60'000.0)
    std::cerr << "warning: explanation took " << report.elapsed_ms / 1000.0 << " s\n";

  const std::string json = report_to_json(report, model, args.zero_timings);
  if (args.out.empty()) {
    std::cout << json;
    return;
  }
  write_file(args.out, json);
  std::cout << "prediction: " << report.predicted << "\n";
  std::cout << "counterfactuals: " << report.counterfactuals.size()
            << (report.complete ? "" : " (truncated)") << "\n";
  for (const Counterfactual& cf : report.counterfactuals) {
    std::cout << "  {";
    for (std::size_t i = 0; i < cf.flip_features.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << model.feature_names[static_cast<std::size_t>(cf.flip_features[i]) - 1];
    }
    std::cout << "} cost " << to_string(cf.cost) << "\n";
  }
}

void run_mcs(const McsArgs& args) {
  const WcnfProblem wcnf = from_wcnf(read_file(args.wcnf_path));
  McsProblem problem;
  problem.hard = wcnf.hard;
  problem.soft = wcnf.soft;
  std::vector<char> seen(static_cast<std::size_t>(wcnf.num_vars) + 1, 0);
  for (std::size_t i = 0; i < wcnf.soft.size(); ++i) {
    if (wcnf.soft[i].size() != 1)
      throw ParseError(args.wcnf_path + ": soft clauses must be unit clauses");
    const int var = var_of(wcnf.soft[i][0]);
    if (seen[var])
      throw ParseError(args.wcnf_path + ": soft variables must be pairwise distinct");
    seen[var] = 1;
    problem.costs[var] = wcnf.soft_weights[i];
  }
  const std::optional<std::size_t> max_count =
      args.max_mcs_set ? std::optional(args.max_mcs) : std::nullopt;
  const McsEnumeration enumeration = enumerate_mcs(problem, max_count);
  for (const Mcs& mcs : enumeration.sets) {
    std::cout << "mcs:";
    for (int var : mcs.features) std::cout << ' ' << var;
    std::cout << " (cost " << to_string(mcs.cost) << ")\n";
  }
  std::cout << "complete: " << (enumeration.complete ? "yes" : "no") << "\n";
}

void run_bench_cmd(const BenchArgs& args) {
  BenchOptions options;
  options.sizes = split_ints(args.sizes, "sizes");
  options.per_size = args.per_size;
  options.seed = args.seed;
  options.clause_cap = args.clause_cap;
  options.zero_timings = args.zero_timings;
  const std::vector<BenchRecord> records = run_bench(options);
  write_file(args.out, bench_to_csv(records));
  print_bench_averages(records, std::cout);
}

} // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Counterfactual explanations for binary naive Bayes classifiers "
               "via decision-diagram compilation and correction-subset enumeration"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic classifier");
  gen->add_option("--features", gen_args.features, "Feature count")->required();
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--out", gen_args.out, "Output model file")->required();
  gen->callback([&] { run_gen(gen_args); });

  CompileArgs compile_args;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a model to an OBDD");
  compile_cmd->add_option("--model", compile_args.model_path, "Model file")->required();
  compile_cmd->add_option("--order", compile_args.order,
                          "Variable ordering as 0-based feature positions");
  compile_cmd->add_option("--dot", compile_args.dot_path, "Write a Graphviz rendering");
  compile_cmd->callback([&] { run_compile(compile_args); });

  EncodeArgs encode_args;
  auto* encode_cmd = app.add_subcommand("encode", "Encode a model's OBDD as CNF");
  encode_cmd->add_option("--model", encode_args.model_path, "Model file")->required();
  encode_cmd->add_option("--out", encode_args.out, "Output DIMACS file")->required();
  encode_cmd->add_flag("--negated", encode_args.negated, "Encode the negated diagram");
  encode_cmd->callback([&] { run_encode(encode_args); });

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand("predict", "Classify one instance");
  predict_cmd->add_option("--model", predict_args.model_path, "Model file")->required();
  predict_cmd->add_option("--instance", predict_args.instance,
                          "Comma-separated 0/1 values")->required();
  predict_cmd->callback([&] { run_predict(predict_args); });

  ExplainArgs explain_args;
  auto* explain_cmd = app.add_subcommand("explain", "Counterfactual explanations "
                                                    "for one instance");
  explain_cmd->add_option("--model", explain_args.model_path, "Model file")->required();
  explain_cmd->add_option("--instance", explain_args.instance,
                          "Comma-separated 0/1 values")->required();
  explain_cmd->add_option("--immutable", explain_args.immutable,
                          "Feature names excluded from flips (comma-separated)");
  explain_cmd->add_option("--costs", explain_args.costs,
                          "Flip costs as NAME=RATIONAL, comma-separated");
  explain_cmd->add_option("--max-mcs", explain_args.max_mcs, "Stop after this many sets")
      ->check(CLI::PositiveNumber);
  explain_cmd->add_option("--out", explain_args.out,
                          "Report file (prints JSON to stdout when absent)");
  explain_cmd->add_option("--cache-dir", explain_args.cache_dir,
                          "Where to cache the clausal encodings");
  explain_cmd->add_flag("--no-cache", explain_args.no_cache, "Disable the CNF cache");
  explain_cmd->add_flag("--zero-timings", explain_args.zero_timings,
                        "Report 0 for elapsed time (reproducible output)");
  explain_cmd->callback([&] {
    explain_args.max_mcs_set = explain_cmd->count("--max-mcs") > 0;
    run_explain(explain_args);
  });

  McsArgs mcs_args;
  auto* mcs_cmd = app.add_subcommand("mcs", "Enumerate minimal correction subsets "
                                            "of a WCNF file");
  mcs_cmd->add_option("--wcnf", mcs_args.wcnf_path, "WCNF input file")->required();
  mcs_cmd->add_option("--max-mcs", mcs_args.max_mcs, "Stop after this many sets")
      ->check(CLI::PositiveNumber);
  mcs_cmd->callback([&] {
    mcs_args.max_mcs_set = mcs_cmd->count("--max-mcs") > 0;
    run_mcs(mcs_args);
  });

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Synthetic pipeline benchmark");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Feature counts, comma-separated")
      ->required();
  bench_cmd->add_option("--per-size", bench_args.per_size, "Models per size");
  bench_cmd->add_option("--seed", bench_args.seed, "RNG seed");
  bench_cmd->add_option("--out", bench_args.out, "Output CSV file")->required();
  bench_cmd->add_option("--clause-cap", bench_args.clause_cap,
                        "Abort a cell when the encoding exceeds this many clauses");
  bench_cmd->add_flag("--zero-timings", bench_args.zero_timings,
                      "Emit 0 for time columns (reproducible output)");
  bench_cmd->callback([&] { run_bench_cmd(bench_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const NoCounterfactualError& e) {
    std::cerr << "error: no counterfactual exists: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

} // namespace cfx
