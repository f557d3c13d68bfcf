#include "cfx/obdd.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace cfx;

namespace {

// evaluate(compile(m), x) == predict(m, x) over all 2^n instances
void check_fidelity(const NbcModel& m, const Obdd& d) {
  const std::vector<int> table = oracles::truth_table(m);
  for (std::uint32_t index = 0; index < table.size(); ++index)
    REQUIRE(evaluate(d, oracles::instance_from_index(index, m.n())) == table[index]);
}

} // namespace

TEST_CASE("the worked example compiles to the expected 6-node diagram") {
  const NbcModel m = oracles::fig_model();
  const Obdd d = compile(m);
  CHECK(d.size() == 6);
  check_fidelity(m, d);
  CHECK(evaluate(d, {1, 1, 1, 1}) == 0);
  CHECK(evaluate(d, {1, 0, 1, 0}) == 1);

  // f = (GPA=0) or (WE=0 and FA=0 and E=0): 8 + 1 models
  CHECK(count_models(d) == 9);
}

TEST_CASE("constant classifiers collapse to a single sink") {
  NbcModel m;
  m.feature_names = {"A", "B"};
  m.prior_pos = Rational(1, 2);
  m.cpt = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};

  SUBCASE("always positive") {
    m.threshold = Rational(1, 2); // odds == 1 == tau everywhere
    const Obdd d = compile(m);
    CHECK(d.root == Obdd::kOneSink);
    CHECK(d.size() == 1);
    CHECK(evaluate(d, {0, 1}) == 1);
    CHECK(count_models(d) == 4);
    CHECK(zero_paths(d).empty());
  }
  SUBCASE("always negative") {
    m.threshold = Rational(3, 4); // tau == 3 > odds
    const Obdd d = compile(m);
    CHECK(d.root == Obdd::kZeroSink);
    CHECK(count_models(d) == 0);
    CHECK(zero_paths(d) == std::vector<PathTerm>{PathTerm{}});
    CHECK(negate(d).root == Obdd::kOneSink);
  }
}

TEST_CASE("compilation is exhaustively faithful on random models") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 9; ++n) {
    for (int round = 0; round < 3; ++round) {
      const NbcModel m = generate_synthetic(n, rng());
      check_fidelity(m, compile(m));
    }
  }
}

TEST_CASE("compilation is canonical") {
  std::mt19937_64 rng(23);
  int agreeing_pairs = 0;
  for (int round = 0; round < 20; ++round) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const NbcModel m1 = generate_synthetic(n, rng());
    CHECK(compile(m1) == compile(m1));

    // a tiny parameter jitter rarely moves any instance across the
    // threshold; whenever predictions agree the diagrams must be identical
    NbcModel m2 = m1;
    m2.cpt[0].p1_pos += Rational(1, 1'000'003);
    if (oracles::truth_table(m1) == oracles::truth_table(m2)) {
      ++agreeing_pairs;
      CHECK(compile(m1) == compile(m2));
    }
  }
  CHECK(agreeing_pairs >= 10);
}

TEST_CASE("a custom ordering changes the shape, not the function") {
  const NbcModel m = oracles::fig_model();
  const Obdd d = compile(m, {3, 2, 1, 0});
  check_fidelity(m, d);
  CHECK_THROWS_AS(compile(m, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(compile(m, {0, 1, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(compile(m, {0, 1, 2, 4}), std::invalid_argument);
}

TEST_CASE("evaluate checks the instance shape") {
  const Obdd d = compile(oracles::fig_model());
  CHECK_THROWS_AS(evaluate(d, {1, 1}), std::invalid_argument);
}

TEST_CASE("negate swaps the sinks and is an involution") {
  const NbcModel m = oracles::fig_model();
  const Obdd d = compile(m);
  const Obdd nd = negate(d);
  CHECK(negate(nd) == d);
  CHECK(count_models(nd) == 16 - 9);
  for (std::uint32_t index = 0; index < 16; ++index) {
    const Instance x = oracles::instance_from_index(index, 4);
    CHECK(evaluate(nd, x) == 1 - evaluate(d, x));
  }
}

TEST_CASE("model counts of a diagram and its negation partition the cube") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Obdd d = compile(generate_synthetic(n, rng()));
    CHECK(count_models(d) + count_models(negate(d)) == (std::uint64_t{1} << n));
  }
}

TEST_CASE("zero paths of the worked example, hi edge explored first") {
  const Obdd d = compile(oracles::fig_model());
  const std::vector<PathTerm> paths = zero_paths(d);
  REQUIRE(paths.size() == 3);
  CHECK(paths[0] == PathTerm{{0, 1}, {3, 1}});
  CHECK(paths[1] == PathTerm{{0, 0}, {1, 1}, {3, 1}});
  CHECK(paths[2] == PathTerm{{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  CHECK(count_zero_paths(d) == 3);
}

TEST_CASE("a single-variable identity function has one zero path") {
  NbcModel m;
  m.feature_names = {"X1"};
  m.prior_pos = Rational(1, 2);
  m.threshold = Rational(1, 2);
  m.cpt = {{Rational(3, 4), Rational(1, 4)}}; // r(1) = 3 >= 1 > 1/3 = r(0)
  const Obdd d = compile(m);
  REQUIRE(predict(m, {1}) == 1);
  REQUIRE(predict(m, {0}) == 0);
  CHECK(zero_paths(d) == std::vector<PathTerm>{PathTerm{{0, 0}}});
}

TEST_CASE("an instance falsifies f iff it extends exactly one zero path") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 15; ++round) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Obdd d = compile(generate_synthetic(n, rng()));
    const std::vector<PathTerm> paths = zero_paths(d);
    CHECK(count_zero_paths(d) == paths.size());
    for (std::uint32_t index = 0; index < (std::uint32_t{1} << n); ++index) {
      const Instance x = oracles::instance_from_index(index, n);
      int extended = 0;
      for (const PathTerm& path : paths) {
        bool matches = true;
        for (const auto& [feature, value] : path)
          if (x[feature] != value) { matches = false; break; }
        extended += matches;
      }
      CHECK(extended == (evaluate(d, x) == 0 ? 1 : 0));
    }
  }
}

TEST_CASE("dot rendering lists nodes and styled edges") {
  const NbcModel m = oracles::fig_model();
  const std::string dot = to_dot(compile(m), m.feature_names);
  CHECK(dot.find("digraph obdd {") == 0);
  CHECK(dot.find("[label=\"GPA\"]") != std::string::npos);
  CHECK(dot.find("[style=solid]") != std::string::npos);
  CHECK(dot.find("[style=dashed]") != std::string::npos);
  CHECK(dot.find("n0 [shape=box,label=\"0\"]") != std::string::npos);
}
