#include <catch2/catch_amalgamated.hpp>

#include "ffl/rng.hpp"
#include "ffl/scan.hpp"
#include "ffl/space.hpp"

using namespace ffl;

namespace {

const std::vector<std::string> kSixPoints = {"-3", "-1", "1", "3", "12", "18"};

MetricTable abs_table(const std::vector<int>& xs) {
  MetricTable d(static_cast<int>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < xs.size(); ++j)
      d.at(static_cast<int>(i), static_cast<int>(j)) = std::abs(xs[i] - xs[j]);
  return d;
}

}  // namespace

TEST_CASE("rational parse and format") {
  CHECK(format_rational(parse_rational("7/8")) == "7/8");
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK(format_rational(parse_rational("42")) == "42");
  CHECK(format_rational(parse_rational(" 3/2 ")) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("a/2"), ParameterError);
  CHECK_THROWS_AS(parse_rational(""), ParameterError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParameterError);
}

TEST_CASE("point sets require distinct labels") {
  CHECK_THROWS_AS(PointSet({"a", "b", "a"}), ParameterError);
  CHECK_THROWS_AS(PointSet({}), ParameterError);
  PointSet pts({"x", "y"});
  CHECK(pts.index_of("y") == 1);
  CHECK(!pts.find("z"));
  CHECK_THROWS_AS(pts.index_of("z"), ParameterError);
}

TEST_CASE("metric validator accepts |x-y| on the six example points") {
  MetricTable d = abs_table({-3, -1, 1, 3, 12, 18});
  CHECK(validate_metric(d).ok());
}

TEST_CASE("metric validator rejects an all-zero table for distinct points") {
  MetricTable d(2);
  auto res = validate_metric(d);
  REQUIRE(!res.ok());
  CHECK(res.violation()->axiom == "identity-of-indiscernibles");
}

TEST_CASE("metric validator reports a triangle violation with its witness") {
  MetricTable d(3);
  d.at(0, 1) = d.at(1, 0) = 1;
  d.at(1, 2) = d.at(2, 1) = 1;
  d.at(0, 2) = d.at(2, 0) = 3;
  auto res = validate_metric(d);
  REQUIRE(!res.ok());
  CHECK(res.violation()->axiom == "triangle-inequality");
  CHECK(res.violation()->points == std::vector<int>{0, 1, 2});
}

TEST_CASE("metric validator rejects negative and asymmetric entries") {
  MetricTable d(2);
  d.at(0, 1) = -1;
  d.at(1, 0) = 1;
  CHECK(validate_metric(d).violation()->axiom == "nonnegativity");
  d.at(0, 1) = 2;
  CHECK(validate_metric(d).violation()->axiom == "symmetry");
}

TEST_CASE("s-metric validator accepts both paper formulas") {
  FiniteDistanceSpace second = builtin_space("second-s-metric", kSixPoints);
  CHECK(validate_s_metric(second.s_metric()).ok());
  FiniteDistanceSpace usual = builtin_space("usual-s-metric", {"0", "1", "2"});
  CHECK(validate_s_metric(usual.s_metric()).ok());
}

TEST_CASE("s-metric validator rejects a nonzero diagonal") {
  SMetricTable s(2);
  // fill a plausible table, then poison S(0,0,0)
  FiniteDistanceSpace usual = builtin_space("usual-s-metric", {"0", "1"});
  s = usual.s_metric();
  s.at(0, 0, 0) = 1;
  auto res = validate_s_metric(s);
  REQUIRE(!res.ok());
  CHECK(res.violation()->axiom == "self-distance-zero");
}

TEST_CASE("b-metric: derived d^S = 2|x-y| passes with b = 3/2") {
  FiniteDistanceSpace second = builtin_space("second-s-metric", kSixPoints);
  BMetricTable t = b_from_s(second.s_metric());
  CHECK(t.coefficient() == Rational(3, 2));
  CHECK(validate_b_metric(t).ok());
  MetricTable d = abs_table({-3, -1, 1, 3, 12, 18});
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(t.at(i, j) == 2 * d.at(i, j));
}

TEST_CASE("b-metric: any metric is a b-metric with b = 1") {
  MetricTable d = abs_table({0, 1, 5});
  std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[i][j] = d.at(i, j);
  CHECK(validate_b_metric(BMetricTable::from_rows(rows, Rational(1))).ok());
}

TEST_CASE("b-metric coefficient below one is a parameter error") {
  BMetricTable t(2, Rational(1, 2));
  t.at(0, 1) = t.at(1, 0) = 1;
  CHECK_THROWS_AS(validate_b_metric(t), ParameterError);
}

TEST_CASE("generated s-metric matches the usual s-metric") {
  MetricTable d = abs_table({0, 1, 2});
  SMetricTable from_d = s_from_metric(d);
  FiniteDistanceSpace usual = builtin_space("usual-s-metric", {"0", "1", "2"});
  CHECK(from_d == usual.s_metric());
}

TEST_CASE("generated s-metric: S_d(x,y,x) = d(y,x) on the discrete metric") {
  MetricTable d(2);
  d.at(0, 1) = d.at(1, 0) = 1;
  SMetricTable s = s_from_metric(d);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(s.at(x, y, x) == d.at(y, x));
}

TEST_CASE("properties over random metrics: generation and pair symmetry") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.range(2, 7);
    MetricTable d = detail::random_metric(n, rng);
    REQUIRE(validate_metric(d).ok());
    SMetricTable s = s_from_metric(d);
    REQUIRE(validate_s_metric(s).ok());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        CHECK(s.at(x, x, y) == 2 * d.at(x, y));
        CHECK(s.at(x, x, y) == s.at(y, y, x));
      }
    BMetricTable t = b_from_s(s);
    CHECK(t.coefficient() == Rational(3, 2));
    CHECK(validate_b_metric(t).ok());
  }
}

TEST_CASE("one-point space degenerates cleanly") {
  FiniteDistanceSpace sp = builtin_space("abs-metric", {"5"});
  CHECK(sp.size() == 1);
  CHECK(sp.metric().at(0, 0) == 0);
  SMetricTable s = s_from_metric(sp.metric());
  CHECK(b_from_s(s).at(0, 0) == 0);
}

TEST_CASE("builtin space errors") {
  CHECK_THROWS_AS(builtin_space("euclid", {"0", "1"}), ParameterError);
  CHECK_THROWS_AS(builtin_space("abs-metric", {"1", "1"}), ParameterError);
  CHECK_THROWS_AS(builtin_space("abs-metric", {"1/2"}), ParameterError);
}

TEST_CASE("structural errors on malformed tables") {
  CHECK_THROWS_AS(MetricTable::from_rows({{Rational(0)}, {Rational(0)}}), StructureError);
  CHECK_THROWS_AS(SMetricTable::from_rows({{Rational(0)}}, 2), StructureError);
  CHECK_THROWS_AS(FiniteDistanceSpace::make(PointSet({"a", "b"}), MetricTable(3)),
                  StructureError);
}

TEST_CASE("space construction refuses invalid tables") {
  MetricTable d(2);  // all zeros, distinct points
  CHECK_THROWS_AS(FiniteDistanceSpace::make(PointSet({"a", "b"}), d), ValidationError);
}

TEST_CASE("pair_dist dispatches per kind") {
  FiniteDistanceSpace m = builtin_space("abs-metric", {"0", "4"});
  CHECK(m.pair_dist(0, 1) == 4);
  FiniteDistanceSpace s = builtin_space("second-s-metric", {"0", "4"});
  CHECK(s.pair_dist(0, 1) == 8);  // S(x,x,y) = 2|x-y|
  FiniteDistanceSpace b =
      FiniteDistanceSpace::make(PointSet({"0", "4"}), b_from_s(s.s_metric()));
  CHECK(b.pair_dist(0, 1) == 8);
  CHECK_THROWS_AS(m.s_metric(), KindError);
  CHECK_THROWS_AS(s.metric(), KindError);
}
