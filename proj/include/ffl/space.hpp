#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/rational.hpp"

namespace ffl {

enum class SpaceKind { Metric, SMetric, BMetric };

inline std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Metric: return "metric";
    case SpaceKind::SMetric: return "s-metric";
    case SpaceKind::BMetric: return "b-metric";
  }
  return "?";
}

// Ordered set of distinct point labels. Indices 0..n-1 are the canonical
// point identity used by every other component.
class PointSet {
public:
  explicit PointSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ParameterError("point set must be nonempty");
    for (size_t i = 0; i < labels_.size(); ++i)
      for (size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw ParameterError("duplicate point label '" + labels_[i] + "'");
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(static_cast<size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> find(std::string_view label) const {
    for (size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<int>(i);
    return std::nullopt;
  }

  int index_of(std::string_view label) const {
    auto i = find(label);
    if (!i) throw ParameterError("unknown point '" + std::string(label) + "'");
    return *i;
  }

  bool operator==(const PointSet&) const = default;

private:
  std::vector<std::string> labels_;
};

// n x n table of exact distances d(x,y).
class MetricTable {
public:
  explicit MetricTable(int n) : n_(check_size(n)), v_(static_cast<size_t>(n) * n) {}

  static MetricTable from_rows(const std::vector<std::vector<Rational>>& rows) {
    int n = static_cast<int>(rows.size());
    MetricTable t(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
        throw StructureError("metric table is not square: row " + std::to_string(i) +
                             " has " + std::to_string(rows[static_cast<size_t>(i)].size()) +
                             " entries, expected " + std::to_string(n));
      for (int j = 0; j < n; ++j) t.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return t;
  }

  int size() const { return n_; }
  const Rational& at(int i, int j) const { return v_[idx(i, j)]; }
  Rational& at(int i, int j) { return v_[idx(i, j)]; }

  bool operator==(const MetricTable&) const = default;

private:
  static int check_size(int n) {
    if (n <= 0) throw StructureError("table size must be positive");
    return n;
  }
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j);
  }
  int n_;
  std::vector<Rational> v_;
};

// n x n x n table of exact values S(x,y,z).
class SMetricTable {
public:
  explicit SMetricTable(int n)
      : n_(check_size(n)), v_(static_cast<size_t>(n) * n * n) {}

  // rows[i*n + j] holds S(i, j, 0..n-1); (i,j) in lexicographic order.
  static SMetricTable from_rows(const std::vector<std::vector<Rational>>& rows, int n) {
    if (static_cast<int>(rows.size()) != n * n)
      throw StructureError("s-metric table is not cubic: got " +
                           std::to_string(rows.size()) + " rows, expected " +
                           std::to_string(n * n));
    SMetricTable t(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& row = rows[static_cast<size_t>(i) * n + j];
        if (static_cast<int>(row.size()) != n)
          throw StructureError("s-metric row (" + std::to_string(i) + "," +
                               std::to_string(j) + ") has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(n));
        for (int k = 0; k < n; ++k) t.at(i, j, k) = row[static_cast<size_t>(k)];
      }
    return t;
  }

  int size() const { return n_; }
  const Rational& at(int i, int j, int k) const { return v_[idx(i, j, k)]; }
  Rational& at(int i, int j, int k) { return v_[idx(i, j, k)]; }

  bool operator==(const SMetricTable&) const = default;

private:
  static int check_size(int n) {
    if (n <= 0) throw StructureError("table size must be positive");
    return n;
  }
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * n_ + static_cast<size_t>(j)) * n_ + static_cast<size_t>(k);
  }
  int n_;
  std::vector<Rational> v_;
};

// n x n table d^S(x,y) with relaxation coefficient b. The coefficient is
// carried unchecked; validate_b_metric rejects b < 1.
class BMetricTable {
public:
  BMetricTable(int n, Rational b)
      : n_(check_size(n)), b_(std::move(b)), v_(static_cast<size_t>(n) * n) {}

  static BMetricTable from_rows(const std::vector<std::vector<Rational>>& rows,
                                Rational b) {
    int n = static_cast<int>(rows.size());
    BMetricTable t(n, std::move(b));
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
        throw StructureError("b-metric table is not square: row " + std::to_string(i) +
                             " has " + std::to_string(rows[static_cast<size_t>(i)].size()) +
                             " entries, expected " + std::to_string(n));
      for (int j = 0; j < n; ++j) t.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return t;
  }

  int size() const { return n_; }
  const Rational& coefficient() const { return b_; }
  const Rational& at(int i, int j) const { return v_[idx(i, j)]; }
  Rational& at(int i, int j) { return v_[idx(i, j)]; }

  bool operator==(const BMetricTable&) const = default;

private:
  static int check_size(int n) {
    if (n <= 0) throw StructureError("table size must be positive");
    return n;
  }
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j);
  }
  int n_;
  Rational b_;
  std::vector<Rational> v_;
};

// First axiom violation found by a validator, with the witnessing tuple.
struct AxiomViolation {
  std::string axiom;        // e.g. "triangle-inequality"
  std::vector<int> points;  // witness indices in scan order
  std::string detail;
};

class ValidationResult {
public:
  static ValidationResult pass() { return ValidationResult(std::nullopt); }
  static ValidationResult fail(AxiomViolation v) { return ValidationResult(std::move(v)); }

  bool ok() const { return !violation_.has_value(); }
  const std::optional<AxiomViolation>& violation() const { return violation_; }

private:
  explicit ValidationResult(std::optional<AxiomViolation> v) : violation_(std::move(v)) {}
  std::optional<AxiomViolation> violation_;
};

// Metric axioms, scanned in a fixed order so the reported witness is
// deterministic: nonnegativity/identity (i,j), symmetry (i<j),
// triangle inequality (i,j,k) lexicographic.
inline ValidationResult validate_metric(const MetricTable& d) {
  const int n = d.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& v = d.at(i, j);
      if (v < 0)
        return ValidationResult::fail({"nonnegativity", {i, j},
                                       "d = " + format_rational(v)});
      if (i == j && v != 0)
        return ValidationResult::fail({"self-distance-zero", {i},
                                       "d(x,x) = " + format_rational(v)});
      if (i != j && v == 0)
        return ValidationResult::fail({"identity-of-indiscernibles", {i, j},
                                       "d = 0 for distinct points"});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d.at(i, j) != d.at(j, i))
        return ValidationResult::fail({"symmetry", {i, j},
                                       format_rational(d.at(i, j)) + " != " +
                                       format_rational(d.at(j, i))});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (d.at(i, k) > d.at(i, j) + d.at(j, k)) {
          Rational lhs = d.at(i, k);
          Rational rhs = d.at(i, j) + d.at(j, k);
          return ValidationResult::fail({"triangle-inequality", {i, j, k},
                                         format_rational(lhs) + " > " + format_rational(rhs)});
        }
  return ValidationResult::pass();
}

// S-metric axioms: S >= 0, S(x,y,z) = 0 iff x = y = z, and the quadruple
// inequality S(x,y,z) <= S(x,x,a) + S(y,y,a) + S(z,z,a). On a table that
// passes those, the pair symmetry S(x,x,y) = S(y,y,x) is a theorem; it is
// still checked explicitly rather than assumed.
inline ValidationResult validate_s_metric(const SMetricTable& s) {
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Rational& v = s.at(i, j, k);
        if (v < 0)
          return ValidationResult::fail({"nonnegativity", {i, j, k},
                                         "S = " + format_rational(v)});
        bool all_equal = (i == j && j == k);
        if (all_equal && v != 0)
          return ValidationResult::fail({"self-distance-zero", {i},
                                         "S(x,x,x) = " + format_rational(v)});
        if (!all_equal && v == 0)
          return ValidationResult::fail({"zero-implies-equal", {i, j, k},
                                         "S = 0 for a non-constant triple"});
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) {
          Rational rhs = s.at(i, i, a) + s.at(j, j, a) + s.at(k, k, a);
          if (s.at(i, j, k) > rhs)
            return ValidationResult::fail({"quadruple-inequality", {i, j, k, a},
                                           format_rational(s.at(i, j, k)) + " > " +
                                           format_rational(rhs)});
        }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s.at(i, i, j) != s.at(j, j, i))
        return ValidationResult::fail({"pair-symmetry", {i, j},
                                       format_rational(s.at(i, i, j)) + " != " +
                                       format_rational(s.at(j, j, i))});
  return ValidationResult::pass();
}

// b-metric axioms with the triangle inequality relaxed by the factor b.
inline ValidationResult validate_b_metric(const BMetricTable& t) {
  if (t.coefficient() < 1)
    throw ParameterError("b-metric coefficient must satisfy b >= 1, got " +
                         format_rational(t.coefficient()));
  const int n = t.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& v = t.at(i, j);
      if (v < 0)
        return ValidationResult::fail({"nonnegativity", {i, j},
                                       "d^S = " + format_rational(v)});
      if (i == j && v != 0)
        return ValidationResult::fail({"self-distance-zero", {i},
                                       "d^S(x,x) = " + format_rational(v)});
      if (i != j && v == 0)
        return ValidationResult::fail({"identity-of-indiscernibles", {i, j},
                                       "d^S = 0 for distinct points"});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (t.at(i, j) != t.at(j, i))
        return ValidationResult::fail({"symmetry", {i, j},
                                       format_rational(t.at(i, j)) + " != " +
                                       format_rational(t.at(j, i))});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational rhs = t.coefficient() * (t.at(i, j) + t.at(j, k));
        if (t.at(i, k) > rhs)
          return ValidationResult::fail({"relaxed-triangle-inequality", {i, j, k},
                                         format_rational(t.at(i, k)) + " > " +
                                         format_rational(rhs)});
      }
  return ValidationResult::pass();
}

// S_d(x,y,z) = d(x,z) + d(y,z): the S-metric generated by a metric.
inline SMetricTable s_from_metric(const MetricTable& d) {
  const int n = d.size();
  SMetricTable s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s.at(i, j, k) = d.at(i, k) + d.at(j, k);
  return s;
}

// d^S(x,y) = S(x,x,y); a b-metric with coefficient b = 3/2.
inline BMetricTable b_from_s(const SMetricTable& s) {
  const int n = s.size();
  BMetricTable t(n, Rational(3, 2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j) = s.at(i, i, j);
  return t;
}

// A point set together with a validated distance table of one of the
// three kinds. Construction through make() guarantees the table passed
// its validator; instances are immutable afterwards.
class FiniteDistanceSpace {
public:
  using Table = std::variant<MetricTable, SMetricTable, BMetricTable>;

  static FiniteDistanceSpace make(PointSet points, MetricTable d) {
    require(points.size() == d.size(), "point/table size mismatch");
    if (auto r = validate_metric(d); !r.ok())
      throw ValidationError(describe_violation("metric", *r.violation(), points));
    return FiniteDistanceSpace(std::move(points), Table(std::move(d)));
  }
  static FiniteDistanceSpace make(PointSet points, SMetricTable s) {
    require(points.size() == s.size(), "point/table size mismatch");
    if (auto r = validate_s_metric(s); !r.ok())
      throw ValidationError(describe_violation("s-metric", *r.violation(), points));
    return FiniteDistanceSpace(std::move(points), Table(std::move(s)));
  }
  static FiniteDistanceSpace make(PointSet points, BMetricTable t) {
    require(points.size() == t.size(), "point/table size mismatch");
    if (auto r = validate_b_metric(t); !r.ok())
      throw ValidationError(describe_violation("b-metric", *r.violation(), points));
    return FiniteDistanceSpace(std::move(points), Table(std::move(t)));
  }

  SpaceKind kind() const {
    if (std::holds_alternative<MetricTable>(table_)) return SpaceKind::Metric;
    if (std::holds_alternative<SMetricTable>(table_)) return SpaceKind::SMetric;
    return SpaceKind::BMetric;
  }

  int size() const { return points_.size(); }
  const PointSet& points() const { return points_; }

  const MetricTable& metric() const {
    if (auto* t = std::get_if<MetricTable>(&table_)) return *t;
    throw KindError("space is not of metric kind");
  }
  const SMetricTable& s_metric() const {
    if (auto* t = std::get_if<SMetricTable>(&table_)) return *t;
    throw KindError("space is not of s-metric kind");
  }
  const BMetricTable& b_metric() const {
    if (auto* t = std::get_if<BMetricTable>(&table_)) return *t;
    throw KindError("space is not of b-metric kind");
  }

  // The pairwise quantity every figure and theorem condition is built
  // from: d(x,y) for metric, S(x,x,y) for S-metric, d^S(x,y) for b-metric.
  const Rational& pair_dist(int i, int j) const {
    if (auto* t = std::get_if<MetricTable>(&table_)) return t->at(i, j);
    if (auto* t = std::get_if<SMetricTable>(&table_)) return t->at(i, i, j);
    return std::get<BMetricTable>(table_).at(i, j);
  }

  bool operator==(const FiniteDistanceSpace&) const = default;

private:
  FiniteDistanceSpace(PointSet points, Table table)
      : points_(std::move(points)), table_(std::move(table)) {}

  static void require(bool cond, const char* msg) {
    if (!cond) throw StructureError(msg);
  }

  static std::string describe_violation(const std::string& kind,
                                        const AxiomViolation& v,
                                        const PointSet& pts) {
    std::string s = kind + " axiom '" + v.axiom + "' violated at (";
    for (size_t i = 0; i < v.points.size(); ++i) {
      if (i) s += ",";
      s += pts.label(v.points[i]);
    }
    s += "): " + v.detail;
    return s;
  }

  PointSet points_;
  Table table_;
};

// Built-in spaces evaluated exactly from integer labels:
//   abs-metric        d(x,y)   = |x - y|
//   usual-s-metric    S(x,y,z) = |x - z| + |y - z|
//   second-s-metric   S(x,y,z) = |x - z| + |x + z - 2y|
// The second S-metric is not generated by any metric.
inline FiniteDistanceSpace builtin_space(std::string_view name,
                                         const std::vector<std::string>& labels) {
  PointSet points{labels};
  std::vector<Rational> x;
  x.reserve(labels.size());
  for (const auto& l : labels) {
    Rational v = parse_rational(l);
    if (denominator(v) != 1)
      throw ParameterError("builtin space labels must be integers, got '" + l + "'");
    x.push_back(std::move(v));
  }
  const int n = points.size();

  if (name == "abs-metric") {
    MetricTable d(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.at(i, j) = rational_abs(x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]);
    return FiniteDistanceSpace::make(std::move(points), std::move(d));
  }
  if (name == "usual-s-metric") {
    SMetricTable s(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          s.at(i, j, k) = rational_abs(x[static_cast<size_t>(i)] - x[static_cast<size_t>(k)]) +
                          rational_abs(x[static_cast<size_t>(j)] - x[static_cast<size_t>(k)]);
    return FiniteDistanceSpace::make(std::move(points), std::move(s));
  }
  if (name == "second-s-metric") {
    SMetricTable s(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          s.at(i, j, k) = rational_abs(x[static_cast<size_t>(i)] - x[static_cast<size_t>(k)]) +
                          rational_abs(x[static_cast<size_t>(i)] + x[static_cast<size_t>(k)] -
                                       2 * x[static_cast<size_t>(j)]);
    return FiniteDistanceSpace::make(std::move(points), std::move(s));
  }
  throw ParameterError("unknown builtin space '" + std::string(name) + "'");
}

}  // namespace ffl
