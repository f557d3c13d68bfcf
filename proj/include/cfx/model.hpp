#pragma once

#include "cfx/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfx {

/// A complete 0/1 instantiation of the features, index-aligned with
/// NbcModel::feature_names.
using Instance = std::vector<std::uint8_t>;

/// Binary naive Bayes classifier with exact-rational parameters.
///
/// cpt[i] holds p(X_i = 1 | Y = 1) and p(X_i = 1 | Y = 0); all probabilities
/// are strictly inside (0, 1) so every likelihood ratio is finite and nonzero.
/// The classifier predicts 1 iff P(Y = 1 | x) >= threshold.
struct NbcModel {
  struct CptRow {
    Rational p1_pos; // p(X_i = 1 | Y = 1)
    Rational p1_neg; // p(X_i = 1 | Y = 0)
    bool operator==(const CptRow&) const = default;
  };

  std::vector<std::string> feature_names;
  Rational prior_pos; // p(Y = 1)
  std::vector<CptRow> cpt;
  Rational threshold;

  int n() const { return static_cast<int>(feature_names.size()); }

  /// Likelihood ratio r_i(v) = p(X_i = v | Y = 1) / p(X_i = v | Y = 0).
  Rational ratio(int feature, int value) const;

  /// prior_pos / (1 - prior_pos).
  Rational prior_odds() const;

  /// threshold / (1 - threshold); predict(x) = 1 iff odds(x) >= this.
  Rational threshold_odds() const;

  bool operator==(const NbcModel&) const = default;
};

/// Checks all model invariants; throws ParseError naming the offending field.
void validate_model(const NbcModel& model);

/// odds(x) = prior_odds * prod_i r_i(x_i), exact.
Rational posterior_odds(const NbcModel& model, const Instance& x);

/// 1 iff P(Y=1|x) >= T, decided by cross-multiplication: odds(x) >= T/(1-T).
/// The boundary case classifies as 1.
int predict(const NbcModel& model, const Instance& x);

/// Deterministic synthetic classifier: prior and CPT entries uniform over
/// {1/100, ..., 99/100}, threshold 1/2, features named X1..Xn.
NbcModel generate_synthetic(int n, std::uint64_t seed);

/// JSON model file round trip: parse(serialize(m)) == m, and serialization is
/// byte-stable. See README for the format.
NbcModel parse_model(const std::string& text);
std::string serialize_model(const NbcModel& model);

/// Comma-separated 0/1 list, e.g. "1,0,1,0"; must have exactly n entries.
/// Throws std::invalid_argument on malformed input.
Instance parse_instance(const std::string& text, int n);

} // namespace cfx
