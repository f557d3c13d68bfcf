#include "cfx/model.hpp"

#include "cfx/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace cfx;

TEST_CASE("posterior odds on the worked example are exact") {
  const NbcModel m = oracles::fig_model();
  CHECK(posterior_odds(m, {1, 1, 1, 1}) == Rational(693, 65184));
  CHECK(posterior_odds(m, {1, 0, 1, 0}) == Rational(623, 24));
  CHECK(posterior_odds(m, {1, 0, 1, 0}) > 1);
}

TEST_CASE("predict thresholds the odds, boundary to class 1") {
  const NbcModel m = oracles::fig_model();
  CHECK(predict(m, {1, 1, 1, 1}) == 0);
  CHECK(predict(m, {1, 0, 1, 0}) == 1);

  // ratio-1 feature: odds independent of x and equal to the prior odds;
  // with T = 1/2 the boundary odds(x) == T/(1-T) == 1 classifies as 1
  NbcModel flat;
  flat.feature_names = {"A"};
  flat.prior_pos = Rational(1, 2);
  flat.threshold = Rational(1, 2);
  flat.cpt = {{Rational(1, 2), Rational(1, 2)}};
  CHECK(posterior_odds(flat, {0}) == posterior_odds(flat, {1}));
  CHECK(posterior_odds(flat, {0}) == flat.prior_odds());
  CHECK(predict(flat, {0}) == 1);
  CHECK(predict(flat, {1}) == 1);
}

TEST_CASE("instance shape is checked") {
  const NbcModel m = oracles::fig_model();
  CHECK_THROWS_AS(posterior_odds(m, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(predict(m, {1, 1, 1, 1, 0}), std::invalid_argument);
}

TEST_CASE("flipping one feature rescales the odds by the ratio quotient") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 50; ++round) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const NbcModel m = generate_synthetic(n, rng());
    Instance x(static_cast<std::size_t>(n));
    for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1);
    const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));

    Instance flipped = x;
    flipped[i] ^= 1;
    const Rational incremental =
        posterior_odds(m, x) * m.ratio(i, flipped[i]) / m.ratio(i, x[i]);
    CHECK(posterior_odds(m, flipped) == incremental);
    CHECK(predict(m, flipped) == (incremental >= m.threshold_odds() ? 1 : 0));
  }
}

TEST_CASE("synthetic generation is deterministic per seed") {
  CHECK(generate_synthetic(5, 7) == generate_synthetic(5, 7));
  CHECK(generate_synthetic(5, 7) != generate_synthetic(5, 8));
}

TEST_CASE("synthetic parameters are hundredths inside (0,1)") {
  const NbcModel m = generate_synthetic(25, 1);
  CHECK(m.n() == 25);
  CHECK(m.cpt.size() == 25);
  CHECK(m.threshold == Rational(1, 2));
  CHECK(in_open_unit_interval(m.prior_pos));
  CHECK(denominator(Rational(m.prior_pos * 100)) == 1);
  for (const auto& row : m.cpt) {
    CHECK(in_open_unit_interval(row.p1_pos));
    CHECK(in_open_unit_interval(row.p1_neg));
    CHECK(denominator(Rational(row.p1_pos * 100)) == 1);
    CHECK(denominator(Rational(row.p1_neg * 100)) == 1);
  }
  CHECK_NOTHROW(validate_model(m));
  CHECK_THROWS_AS(generate_synthetic(0, 1), std::invalid_argument);
}

TEST_CASE("model files round trip exactly") {
  const NbcModel m = oracles::fig_model();
  const std::string text = serialize_model(m);
  CHECK(parse_model(text) == m);
  CHECK(serialize_model(parse_model(text)) == text);

  const NbcModel synthetic = generate_synthetic(12, 3);
  CHECK(parse_model(serialize_model(synthetic)) == synthetic);
}

TEST_CASE("the worked example model file parses to the expected parameters") {
  const std::string text = R"({
    "n": 4,
    "feature_names": ["WE", "FA", "E", "GPA"],
    "prior_pos": "7/10",
    "threshold": "1/2",
    "cpt": [
      {"p1_pos": "3/10", "p1_neg": "8/10"},
      {"p1_pos": "2/10", "p1_neg": "7/10"},
      {"p1_pos": "15/100", "p1_neg": "4/10"},
      {"p1_pos": "11/100", "p1_neg": "97/100"}
    ]
  })";
  CHECK(parse_model(text) == oracles::fig_model());
}

TEST_CASE("model parse errors name the offending field") {
  NbcModel m = oracles::fig_model();
  std::string text = serialize_model(m);

  SUBCASE("probability on the boundary of (0,1)") {
    auto broken = text;
    broken.replace(broken.find("\"3/10\""), 6, "\"0/1\"");
    CHECK_THROWS_WITH_AS(parse_model(broken),
                         "model field cpt[0].p1_pos: must lie strictly in (0,1)",
                         ParseError);
  }
  SUBCASE("malformed rational") {
    auto broken = text;
    broken.replace(broken.find("\"7/10\""), 6, "\"0.7\"");
    CHECK_THROWS_WITH_AS(parse_model(broken),
                         "model field prior_pos: malformed rational \"0.7\"",
                         ParseError);
  }
  SUBCASE("duplicate feature names") {
    auto broken = text;
    broken.replace(broken.find("\"FA\""), 4, "\"WE\"");
    CHECK_THROWS_WITH_AS(parse_model(broken),
                         "model field feature_names: duplicate \"WE\"", ParseError);
  }
  SUBCASE("not JSON at all") { CHECK_THROWS_AS(parse_model("{nope"), ParseError); }
}

TEST_CASE("instance strings parse strictly") {
  CHECK(parse_instance("1,0,1,0", 4) == Instance{1, 0, 1, 0});
  CHECK_THROWS_AS(parse_instance("1,0,1", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance("1,0,1,2", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance("1, 0,1,0", 4), std::invalid_argument);
}
