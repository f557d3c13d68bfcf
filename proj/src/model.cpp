#include "cfx/model.hpp"

#include "cfx/errors.hpp"

#include <nlohmann/json.hpp>

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cfx {

Rational NbcModel::ratio(int feature, int value) const {
  const CptRow& row = cpt.at(static_cast<std::size_t>(feature));
  if (value == 1) return row.p1_pos / row.p1_neg;
  return (1 - row.p1_pos) / (1 - row.p1_neg);
}

Rational NbcModel::prior_odds() const { return prior_pos / (1 - prior_pos); }

Rational NbcModel::threshold_odds() const { return threshold / (1 - threshold); }

void validate_model(const NbcModel& model) {
  if (model.n() < 1) throw ParseError("model field n: must be >= 1");
  if (model.cpt.size() != model.feature_names.size())
    throw ParseError("model field cpt: expected one row per feature");
  if (!in_open_unit_interval(model.prior_pos))
    throw ParseError("model field prior_pos: must lie strictly in (0,1)");
  if (!in_open_unit_interval(model.threshold))
    throw ParseError("model field threshold: must lie strictly in (0,1)");
  for (std::size_t i = 0; i < model.cpt.size(); ++i) {
    if (!in_open_unit_interval(model.cpt[i].p1_pos))
      throw ParseError("model field cpt[" + std::to_string(i) +
                       "].p1_pos: must lie strictly in (0,1)");
    if (!in_open_unit_interval(model.cpt[i].p1_neg))
      throw ParseError("model field cpt[" + std::to_string(i) +
                       "].p1_neg: must lie strictly in (0,1)");
  }
  std::set<std::string> seen;
  for (const std::string& name : model.feature_names) {
    if (name.empty()) throw ParseError("model field feature_names: empty name");
    if (!seen.insert(name).second)
      throw ParseError("model field feature_names: duplicate \"" + name + "\"");
  }
}

namespace {

void check_shape(const NbcModel& model, const Instance& x) {
  if (static_cast<int>(x.size()) != model.n())
    throw std::invalid_argument("instance has " + std::to_string(x.size()) +
                                " entries, model expects " + std::to_string(model.n()));
}

} // namespace

Rational posterior_odds(const NbcModel& model, const Instance& x) {
  check_shape(model, x);
  Rational odds = model.prior_odds();
  for (int i = 0; i < model.n(); ++i) odds *= model.ratio(i, x[i]);
  return odds;
}

int predict(const NbcModel& model, const Instance& x) {
  return posterior_odds(model, x) >= model.threshold_odds() ? 1 : 0;
}

NbcModel generate_synthetic(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("feature count must be >= 1");
  std::mt19937_64 rng(seed);
  // mt19937_64's output sequence is pinned by the standard; mapping to
  // 1..99 by modulo keeps generation identical across platforms.
  auto hundredth = [&rng] { return Rational(1 + static_cast<int>(rng() % 99), 100); };
  NbcModel model;
  model.prior_pos = hundredth();
  model.threshold = Rational(1, 2);
  for (int i = 0; i < n; ++i) {
    model.feature_names.push_back("X" + std::to_string(i + 1));
    Rational p1_pos = hundredth();
    Rational p1_neg = hundredth();
    model.cpt.push_back({p1_pos, p1_neg});
  }
  return model;
}

namespace {

using json = nlohmann::ordered_json;

Rational rational_field(const json& j, const std::string& field,
                        const std::string& prefix = {}) {
  const std::string where = "model field " + prefix + field;
  if (!j.contains(field)) throw ParseError(where + ": missing");
  if (!j.at(field).is_string())
    throw ParseError(where + ": expected a \"num/den\" string");
  try {
    return parse_rational(j.at(field).get<std::string>());
  } catch (const ParseError&) {
    throw ParseError(where + ": malformed rational \"" +
                     j.at(field).get<std::string>() + "\"");
  }
}

} // namespace

NbcModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model file: expected a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw ParseError("model field n: missing or not an integer");
  const int n = j.at("n").get<int>();
  if (!j.contains("feature_names") || !j.at("feature_names").is_array())
    throw ParseError("model field feature_names: missing or not an array");
  NbcModel model;
  for (const auto& name : j.at("feature_names")) {
    if (!name.is_string()) throw ParseError("model field feature_names: expected strings");
    model.feature_names.push_back(name.get<std::string>());
  }
  if (static_cast<int>(model.feature_names.size()) != n)
    throw ParseError("model field feature_names: expected " + std::to_string(n) + " entries");
  model.prior_pos = rational_field(j, "prior_pos");
  model.threshold = rational_field(j, "threshold");
  if (!j.contains("cpt") || !j.at("cpt").is_array())
    throw ParseError("model field cpt: missing or not an array");
  std::size_t row_index = 0;
  for (const auto& row : j.at("cpt")) {
    const std::string prefix = "cpt[" + std::to_string(row_index) + "].";
    if (!row.is_object())
      throw ParseError("model field cpt[" + std::to_string(row_index) + "]: expected an object");
    NbcModel::CptRow cpt_row;
    cpt_row.p1_pos = rational_field(row, "p1_pos", prefix);
    cpt_row.p1_neg = rational_field(row, "p1_neg", prefix);
    model.cpt.push_back(cpt_row);
    ++row_index;
  }
  if (static_cast<int>(model.cpt.size()) != n)
    throw ParseError("model field cpt: expected " + std::to_string(n) + " rows");
  validate_model(model);
  return model;
}

std::string serialize_model(const NbcModel& model) {
  json j;
  j["n"] = model.n();
  j["feature_names"] = model.feature_names;
  j["prior_pos"] = to_string(model.prior_pos);
  j["threshold"] = to_string(model.threshold);
  json cpt = json::array();
  for (const auto& row : model.cpt) {
    json r;
    r["p1_pos"] = to_string(row.p1_pos);
    r["p1_neg"] = to_string(row.p1_neg);
    cpt.push_back(std::move(r));
  }
  j["cpt"] = std::move(cpt);
  return j.dump(2) + "\n";
}

Instance parse_instance(const std::string& text, int n) {
  Instance x;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token == "0")
      x.push_back(0);
    else if (token == "1")
      x.push_back(1);
    else
      throw std::invalid_argument("instance entry \"" + token + "\" is not 0 or 1");
  }
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("instance has " + std::to_string(x.size()) +
                                " entries, expected " + std::to_string(n));
  return x;
}

} // namespace cfx
