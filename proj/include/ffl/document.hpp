#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/geometry.hpp"
#include "ffl/selfmap.hpp"
#include "ffl/simfunc.hpp"
#include "ffl/space.hpp"

namespace ffl {

// Figure request inside a document or on the command line, by labels.
struct FigureSpec {
  ShapeKind shape = ShapeKind::Circle;
  std::vector<std::string> centers;  // one label (circle/disc) or two (ellipses)
  Rational r;

  bool operator==(const FigureSpec&) const = default;

  Figure resolve(const FiniteDistanceSpace& sp) const {
    bool ellipse_like = shape == ShapeKind::Ellipse || shape == ShapeKind::ClosedEllipse;
    if (ellipse_like) {
      if (centers.size() != 2)
        throw ParameterError("ellipse figures need exactly two foci labels");
      return shape == ShapeKind::Ellipse
                 ? Figure::ellipse(sp.kind(), sp.points().index_of(centers[0]),
                                   sp.points().index_of(centers[1]), r)
                 : Figure::closed_ellipse(sp.kind(), sp.points().index_of(centers[0]),
                                          sp.points().index_of(centers[1]), r);
    }
    if (centers.size() != 1)
      throw ParameterError("circle/disc figures need exactly one center label");
    return shape == ShapeKind::Circle
               ? Figure::circle(sp.kind(), sp.points().index_of(centers[0]), r)
               : Figure::disc(sp.kind(), sp.points().index_of(centers[0]), r);
  }
};

struct VerifyRequest {
  std::string theorem;  // ellipse | circle | disc | closed-ellipse | ze-contraction |
                        // phi-circle | uniqueness | identity
  std::vector<std::string> foci;
  std::optional<std::string> center;
  std::optional<Rational> r;
  std::optional<Rational> a;
  std::optional<FigureSpec> figure;

  bool operator==(const VerifyRequest&) const = default;
};

// A parsed and validated .ffl document: space, self-map, and optionally a
// zeta spec and a verification request. The source fields are kept
// verbatim so rendering is faithful.
struct SpaceDocument {
  FiniteDistanceSpace space;
  SelfMap map;
  std::optional<SimFunc> zeta;
  std::optional<VerifyRequest> verify;

  std::string source_spec;               // "builtin:<name>" | "b-from-s:<name>" | "table"
  std::optional<Rational> b;             // explicit b for table-sourced b-metric spaces
  std::optional<std::string> zeta_spec;  // verbatim zeta line

  bool operator==(const SpaceDocument&) const = default;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline ShapeKind parse_shape(const std::string& name, int line) {
  if (name == "circle") return ShapeKind::Circle;
  if (name == "disc") return ShapeKind::Disc;
  if (name == "ellipse") return ShapeKind::Ellipse;
  if (name == "closed-ellipse") return ShapeKind::ClosedEllipse;
  throw ParseError("unknown figure shape '" + name + "'", line, 1);
}

// Raw key/value content of a document, before any table is built.
struct DocumentLines {
  std::optional<std::string> kind_str, points_line, source, b_line;
  std::optional<std::pair<int, std::string>> zeta_line;
  std::vector<std::pair<int, std::string>> rows, srows, map_lines;
  std::map<std::string, std::pair<int, std::string>> verify_kv;
  std::vector<std::string> verify_order;
  int space_line = 1;
};

inline DocumentLines collect_lines(std::string_view text) {
  DocumentLines doc;
  std::string section;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                    : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    size_t b0 = line.find_first_not_of(" \t\r");
    if (b0 == std::string::npos) continue;
    size_t b1 = line.find_last_not_of(" \t\r");
    line = line.substr(b0, b1 - b0 + 1);

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("malformed section header", lineno, static_cast<int>(line.size()));
      section = line.substr(1, line.size() - 2);
      if (section != "space" && section != "map" && section != "zeta" && section != "verify")
        throw ParseError("unknown section [" + section + "]", lineno, 1);
      if (section == "space") doc.space_line = lineno;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno, 1);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(value);
    if (key.empty() || value.empty())
      throw ParseError("empty key or value", lineno, static_cast<int>(eq) + 1);

    if (section == "space") {
      if (key == "kind") doc.kind_str = value;
      else if (key == "points") doc.points_line = value;
      else if (key == "source") doc.source = value;
      else if (key == "b") doc.b_line = value;
      else if (key == "row") doc.rows.emplace_back(lineno, value);
      else if (key == "srow") doc.srows.emplace_back(lineno, value);
      else throw ParseError("unknown [space] key '" + key + "'", lineno, 1);
    } else if (section == "map") {
      if (key == "map") doc.map_lines.emplace_back(lineno, value);
      else throw ParseError("unknown [map] key '" + key + "'", lineno, 1);
    } else if (section == "zeta") {
      if (key == "zeta") doc.zeta_line = {lineno, value};
      else throw ParseError("unknown [zeta] key '" + key + "'", lineno, 1);
    } else if (section == "verify") {
      if (doc.verify_kv.count(key))
        throw ParseError("duplicate [verify] key '" + key + "'", lineno, 1);
      doc.verify_kv[key] = {lineno, value};
      doc.verify_order.push_back(key);
    } else {
      throw ParseError("content before any section header", lineno, 1);
    }
  }
  return doc;
}

// Labels plus an unvalidated distance table; axiom checks happen after.
struct BuiltTables {
  std::vector<std::string> labels;
  SpaceKind kind = SpaceKind::Metric;
  std::variant<MetricTable, SMetricTable, BMetricTable> table{MetricTable(1)};
  std::string source_spec;
  std::optional<Rational> b;
};

inline BuiltTables build_tables(const DocumentLines& doc) {
  if (!doc.kind_str) throw ParseError("[space] is missing 'kind'", doc.space_line, 1);
  if (!doc.points_line) throw ParseError("[space] is missing 'points'", doc.space_line, 1);
  if (!doc.source) throw ParseError("[space] is missing 'source'", doc.space_line, 1);
  const std::string& kind_str = *doc.kind_str;
  if (kind_str != "metric" && kind_str != "s-metric" && kind_str != "b-metric")
    throw ParseError("unknown space kind '" + kind_str + "'", doc.space_line, 1);

  BuiltTables out;
  out.labels = split_ws(*doc.points_line);
  if (out.labels.empty()) throw ParseError("'points' lists no labels", doc.space_line, 1);
  const int n = static_cast<int>(out.labels.size());
  out.kind = kind_str == "metric"     ? SpaceKind::Metric
             : kind_str == "s-metric" ? SpaceKind::SMetric
                                      : SpaceKind::BMetric;
  out.source_spec = *doc.source;

  auto parse_row = [&](const std::pair<int, std::string>& row) {
    std::vector<Rational> vals;
    for (const auto& tok : split_ws(row.second)) {
      try {
        vals.push_back(parse_rational(tok));
      } catch (const ParameterError& e) {
        throw ParseError(e.what(), row.first, 1);
      }
    }
    return vals;
  };

  try {
    if (doc.source->rfind("builtin:", 0) == 0) {
      std::string name = doc.source->substr(8);
      FiniteDistanceSpace sp = builtin_space(name, out.labels);
      std::string expect = name == "abs-metric" ? "metric" : "s-metric";
      if (kind_str != expect)
        throw ParameterError("builtin '" + name + "' builds a " + expect +
                             " space, but kind = " + kind_str);
      if (sp.kind() == SpaceKind::Metric) out.table = sp.metric();
      else out.table = sp.s_metric();
    } else if (doc.source->rfind("b-from-s:", 0) == 0) {
      if (kind_str != "b-metric")
        throw ParameterError("source 'b-from-s' requires kind = b-metric");
      FiniteDistanceSpace s = builtin_space(doc.source->substr(9), out.labels);
      out.table = b_from_s(s.s_metric());
    } else if (*doc.source == "table") {
      PointSet label_check{out.labels};  // duplicate-label check
      if (kind_str == "s-metric") {
        std::vector<std::vector<Rational>> data;
        for (const auto& row : doc.srows) data.push_back(parse_row(row));
        out.table = SMetricTable::from_rows(data, n);
      } else {
        std::vector<std::vector<Rational>> data;
        for (const auto& row : doc.rows) data.push_back(parse_row(row));
        if (static_cast<int>(data.size()) != n)
          throw StructureError("expected " + std::to_string(n) + " 'row' lines, got " +
                               std::to_string(data.size()));
        if (kind_str == "metric") {
          out.table = MetricTable::from_rows(data);
        } else {
          if (!doc.b_line) throw ParameterError("b-metric table requires 'b = p/q'");
          out.b = parse_rational(*doc.b_line);
          out.table = BMetricTable::from_rows(data, *out.b);
        }
      }
    } else {
      throw ParameterError("unknown source '" + *doc.source + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), doc.space_line, 1);
  }
  return out;
}

inline ValidationResult validate_tables(const BuiltTables& built) {
  if (const auto* m = std::get_if<MetricTable>(&built.table)) return validate_metric(*m);
  if (const auto* s = std::get_if<SMetricTable>(&built.table)) return validate_s_metric(*s);
  return validate_b_metric(std::get<BMetricTable>(built.table));
}

}  // namespace detail

// Syntax-level pass over a document that reports the axiom-validation
// outcome instead of rejecting invalid tables. ParseError still covers
// structural and syntactic problems.
struct DocumentValidation {
  SpaceKind kind = SpaceKind::Metric;
  PointSet points;
  ValidationResult result;
};

inline DocumentValidation validate_document(std::string_view text) {
  detail::BuiltTables built = detail::build_tables(detail::collect_lines(text));
  return DocumentValidation{built.kind, PointSet(built.labels),
                            detail::validate_tables(built)};
}

inline SpaceDocument parse_document(std::string_view text) {
  detail::DocumentLines lines = detail::collect_lines(text);
  detail::BuiltTables built = detail::build_tables(lines);
  if (auto res = detail::validate_tables(built); !res.ok())
    throw ParseError(to_string(built.kind) + " axiom '" + res.violation()->axiom +
                         "' fails: " + res.violation()->detail,
                     lines.space_line, 1);

  PointSet points{built.labels};
  std::optional<FiniteDistanceSpace> space;
  if (auto* m = std::get_if<MetricTable>(&built.table))
    space = FiniteDistanceSpace::make(points, std::move(*m));
  else if (auto* s = std::get_if<SMetricTable>(&built.table))
    space = FiniteDistanceSpace::make(points, std::move(*s));
  else
    space = FiniteDistanceSpace::make(points, std::move(std::get<BMetricTable>(built.table)));
  const int n = space->size();

  // Self-map from label:image pairs; totality is enforced.
  std::vector<int> image(static_cast<size_t>(n), -1);
  for (const auto& [ln, value] : lines.map_lines)
    for (const auto& tok : detail::split_ws(value)) {
      size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError("map entries look like 'point:image', got '" + tok + "'", ln, 1);
      std::string from = tok.substr(0, colon), to = tok.substr(colon + 1);
      auto fi = space->points().find(from);
      if (!fi) throw ParseError("map source '" + from + "' is not a declared point", ln, 1);
      auto ti = space->points().find(to);
      if (!ti) throw ParseError("map image '" + to + "' is not a declared point", ln, 1);
      if (image[static_cast<size_t>(*fi)] != -1)
        throw ParseError("map assigns '" + from + "' twice", ln, 1);
      image[static_cast<size_t>(*fi)] = *ti;
    }
  for (int i = 0; i < n; ++i)
    if (image[static_cast<size_t>(i)] == -1)
      throw ParseError("map does not assign point '" + space->points().label(i) + "'",
                       lines.map_lines.empty() ? lines.space_line
                                               : lines.map_lines.back().first,
                       1);

  std::optional<SimFunc> zeta;
  if (lines.zeta_line) {
    try {
      zeta = SimFunc::from_spec(lines.zeta_line->second);
    } catch (const Error& e) {
      throw ParseError(e.what(), lines.zeta_line->first, 1);
    }
  }

  std::optional<VerifyRequest> verify;
  if (!lines.verify_kv.empty()) {
    VerifyRequest vr;
    for (const auto& key : lines.verify_order) {
      const auto& [ln, value] = lines.verify_kv.at(key);
      try {
        if (key == "theorem") vr.theorem = value;
        else if (key == "foci") {
          vr.foci = detail::split_ws(value);
          if (vr.foci.size() != 2) throw ParameterError("'foci' needs exactly two labels");
          for (const auto& l : vr.foci) space->points().index_of(l);
        } else if (key == "center") {
          space->points().index_of(value);
          vr.center = value;
        } else if (key == "r") vr.r = parse_rational(value);
        else if (key == "a") vr.a = parse_rational(value);
        else if (key == "figure") {
          auto toks = detail::split_ws(value);
          if (toks.size() < 3)
            throw ParameterError("'figure' looks like '<shape> <centers...> <r>'");
          FigureSpec fs;
          fs.shape = detail::parse_shape(toks[0], ln);
          fs.centers.assign(toks.begin() + 1, toks.end() - 1);
          for (const auto& l : fs.centers) space->points().index_of(l);
          fs.r = parse_rational(toks.back());
          fs.resolve(*space);  // shape/center-count check
          vr.figure = fs;
        } else {
          throw ParameterError("unknown [verify] key '" + key + "'");
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), ln, 1);
      }
    }
    if (vr.theorem.empty())
      throw ParseError("[verify] is missing 'theorem'", lines.verify_kv.begin()->second.first,
                       1);
    verify = std::move(vr);
  }

  SelfMap map(std::move(image), n);
  std::optional<std::string> zeta_spec;
  if (lines.zeta_line) zeta_spec = lines.zeta_line->second;
  return SpaceDocument{std::move(*space), std::move(map),   std::move(zeta),
                       std::move(verify), built.source_spec, built.b,
                       std::move(zeta_spec)};
}

// Canonical rendering; parse(render(parse(text))) == parse(text).
inline std::string render_document(const SpaceDocument& doc) {
  std::ostringstream out;
  const PointSet& pts = doc.space.points();
  out << "[space]\n";
  out << "kind = " << to_string(doc.space.kind()) << "\n";
  out << "points =";
  for (const auto& l : pts.labels()) out << " " << l;
  out << "\n";
  out << "source = " << doc.source_spec << "\n";
  if (doc.source_spec == "table") {
    if (doc.space.kind() == SpaceKind::SMetric) {
      const auto& s = doc.space.s_metric();
      for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) {
          out << "srow =";
          for (int k = 0; k < s.size(); ++k) out << " " << format_rational(s.at(i, j, k));
          out << "\n";
        }
    } else {
      const int n = doc.space.size();
      if (doc.space.kind() == SpaceKind::BMetric)
        out << "b = " << format_rational(doc.space.b_metric().coefficient()) << "\n";
      for (int i = 0; i < n; ++i) {
        out << "row =";
        for (int j = 0; j < n; ++j)
          out << " "
              << format_rational(doc.space.kind() == SpaceKind::Metric
                                     ? doc.space.metric().at(i, j)
                                     : doc.space.b_metric().at(i, j));
        out << "\n";
      }
    }
  }
  out << "\n[map]\nmap =";
  for (int i = 0; i < doc.space.size(); ++i)
    out << " " << pts.label(i) << ":" << pts.label(doc.map(i));
  out << "\n";
  if (doc.zeta_spec) out << "\n[zeta]\nzeta = " << *doc.zeta_spec << "\n";
  if (doc.verify) {
    const VerifyRequest& vr = *doc.verify;
    out << "\n[verify]\ntheorem = " << vr.theorem << "\n";
    if (!vr.foci.empty()) out << "foci = " << vr.foci[0] << " " << vr.foci[1] << "\n";
    if (vr.center) out << "center = " << *vr.center << "\n";
    if (vr.r) out << "r = " << format_rational(*vr.r) << "\n";
    if (vr.a) out << "a = " << format_rational(*vr.a) << "\n";
    if (vr.figure) {
      out << "figure = " << to_string(vr.figure->shape);
      for (const auto& c : vr.figure->centers) out << " " << c;
      out << " " << format_rational(vr.figure->r) << "\n";
    }
  }
  return out.str();
}

}  // namespace ffl
