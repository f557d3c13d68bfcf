#include "cfx/cnf.hpp"

#include "cfx/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>

namespace cfx {

bool satisfies(const Clause& clause, const Assignment& assignment) {
  for (Lit lit : clause) {
    const bool value = assignment[static_cast<std::size_t>(var_of(lit)) - 1] != 0;
    if (value == (lit > 0)) return true;
  }
  return false;
}

bool satisfies(const CnfFormula& formula, const Assignment& assignment) {
  for (const Clause& clause : formula.clauses)
    if (!satisfies(clause, assignment)) return false;
  return true;
}

namespace {

void append_clause(std::ostringstream& out, const Clause& clause) {
  for (Lit lit : clause) out << lit << ' ';
  out << "0\n";
}

// Shared clause-body reader: signed integer tokens up to a 0 terminator.
// `line` tracks the 1-based line number for diagnostics.
class TokenReader {
public:
  explicit TokenReader(const std::string& text) : text_(text) {}

  // Returns false at end of input. Skips whitespace and 'c' comment lines.
  bool next(std::string& token, int& line) {
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) return false;
      if (text_[pos_] == 'c' && at_line_start_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    at_line_start_ = false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    token = text_.substr(start, pos_ - start);
    line = line_;
    return true;
  }

  int line() const { return line_; }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        at_line_start_ = true;
      }
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  bool at_line_start_ = true;
};

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

int parse_int_token(const std::string& token, int line) {
  std::size_t consumed = 0;
  int value = 0;
  try {
    value = std::stoi(token, &consumed);
  } catch (const std::exception&) {
    parse_fail(line, "expected an integer, got \"" + token + "\"");
  }
  if (consumed != token.size())
    parse_fail(line, "expected an integer, got \"" + token + "\"");
  return value;
}

// Reads one clause body (literals until the 0 terminator); duplicates are
// dropped, complementary pairs rejected.
Clause read_clause(TokenReader& reader, int num_vars) {
  Clause clause;
  std::set<Lit> seen;
  std::string token;
  int line = reader.line();
  for (;;) {
    if (!reader.next(token, line))
      parse_fail(line, "missing clause terminator 0");
    const int lit = parse_int_token(token, line);
    if (lit == 0) break;
    if (var_of(lit) > num_vars)
      parse_fail(line, "literal " + std::to_string(lit) + " out of range (" +
                           std::to_string(num_vars) + " variables declared)");
    if (seen.count(-lit))
      parse_fail(line, "tautological clause (contains both " +
                           std::to_string(lit) + " and " + std::to_string(-lit) + ")");
    if (seen.insert(lit).second) clause.push_back(lit);
  }
  return clause;
}

void expect_header_word(TokenReader& reader, const std::string& expected) {
  std::string token;
  int line = 1;
  if (!reader.next(token, line) || token != expected)
    parse_fail(line, "bad header: expected \"" + expected + "\"");
}

int read_header_count(TokenReader& reader, const std::string& what) {
  std::string token;
  int line = 1;
  if (!reader.next(token, line)) parse_fail(line, "bad header: missing " + what);
  const int value = parse_int_token(token, line);
  if (value < 0) parse_fail(line, "bad header: negative " + what);
  return value;
}

} // namespace

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& clause : f.clauses) append_clause(out, clause);
  return out.str();
}

CnfFormula from_dimacs(const std::string& text) {
  TokenReader reader(text);
  expect_header_word(reader, "p");
  expect_header_word(reader, "cnf");
  CnfFormula f;
  f.num_vars = read_header_count(reader, "variable count");
  const int clause_count = read_header_count(reader, "clause count");
  for (int i = 0; i < clause_count; ++i)
    f.clauses.push_back(read_clause(reader, f.num_vars));
  std::string extra;
  int line = reader.line();
  if (reader.next(extra, line))
    parse_fail(line, "trailing content after " + std::to_string(clause_count) +
                         " declared clauses");
  return f;
}

std::string to_wcnf(const CnfFormula& hard, const std::vector<Clause>& soft,
                    const std::vector<Rational>& soft_weights) {
  Rational weight_sum = 0;
  for (const Rational& w : soft_weights) weight_sum += w;
  // smallest integer strictly above the sum of soft weights
  BigInt top = numerator(weight_sum) / denominator(weight_sum) + 1;

  std::ostringstream out;
  out << "p wcnf " << hard.num_vars << ' ' << hard.clauses.size() + soft.size()
      << ' ' << top.str() << '\n';
  for (const Clause& clause : hard.clauses) {
    out << top.str() << ' ';
    append_clause(out, clause);
  }
  for (std::size_t i = 0; i < soft.size(); ++i) {
    out << to_string(soft_weights[i]) << ' ';
    append_clause(out, soft[i]);
  }
  return out.str();
}

WcnfProblem from_wcnf(const std::string& text) {
  TokenReader reader(text);
  expect_header_word(reader, "p");
  expect_header_word(reader, "wcnf");
  WcnfProblem problem;
  problem.num_vars = read_header_count(reader, "variable count");
  problem.hard.num_vars = problem.num_vars;
  const int clause_count = read_header_count(reader, "clause count");

  std::string token;
  int line = reader.line();
  if (!reader.next(token, line)) parse_fail(line, "bad header: missing top weight");
  Rational top;
  try {
    top = parse_rational(token);
  } catch (const ParseError&) {
    parse_fail(line, "bad header: malformed top weight \"" + token + "\"");
  }
  if (top <= 0) parse_fail(line, "bad header: top weight must be positive");

  for (int i = 0; i < clause_count; ++i) {
    line = reader.line();
    if (!reader.next(token, line)) parse_fail(line, "missing clause weight");
    Rational weight;
    try {
      weight = parse_rational(token);
    } catch (const ParseError&) {
      parse_fail(line, "malformed clause weight \"" + token + "\"");
    }
    if (weight <= 0) parse_fail(line, "clause weight must be positive");
    if (weight > top) parse_fail(line, "clause weight exceeds top");
    Clause clause = read_clause(reader, problem.num_vars);
    if (weight == top) {
      problem.hard.clauses.push_back(std::move(clause));
    } else {
      problem.soft.push_back(std::move(clause));
      problem.soft_weights.push_back(std::move(weight));
    }
  }
  line = reader.line();
  if (reader.next(token, line))
    parse_fail(line, "trailing content after " + std::to_string(clause_count) +
                         " declared clauses");
  return problem;
}

} // namespace cfx
