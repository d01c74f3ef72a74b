#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ffl/demo_ellipse.hpp"
#include "ffl/oracle.hpp"
#include "ffl/report.hpp"
#include "ffl/scan.hpp"

namespace ffl {

using OrderedJson = nlohmann::ordered_json;

enum class OutputFormat { Text, Json };

// ---------------------------------------------------------------------------
// Verifier reports. JSON schema (stable):
//   { theorem, kind, status, params{...}, conditions[{id, statement, status,
//     witnesses[], evaluations[{point, expr, value}], note}],
//     conclusion{claimed, members[], oracle_confirmed}, notes[] }
// Sweep reports add "sweep": [{a, report}] and set params.a = "sweep";
// their conditions[] fold the per-a runs (fail dominates).
// All rationals are rendered as "p/q" (or plain integer) strings.
// ---------------------------------------------------------------------------
inline OrderedJson to_json(const ConditionReport& c) {
  OrderedJson j;
  j["id"] = c.id;
  j["statement"] = c.statement;
  j["status"] = to_string(c.status);
  j["witnesses"] = c.witnesses;
  OrderedJson evals = OrderedJson::array();
  for (const auto& e : c.evaluations)
    evals.push_back(OrderedJson{{"point", e.point}, {"expr", e.expr}, {"value", e.value}});
  j["evaluations"] = evals;
  j["note"] = c.note;
  return j;
}

inline OrderedJson to_json(const VerifierReport& r) {
  OrderedJson j;
  j["theorem"] = r.theorem;
  j["kind"] = to_string(r.kind);
  j["status"] = to_string(r.status);
  OrderedJson params = OrderedJson::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  OrderedJson conds = OrderedJson::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  j["conditions"] = conds;
  j["conclusion"] = OrderedJson{{"claimed", r.conclusion.claimed},
                                {"members", r.conclusion.members},
                                {"oracle_confirmed", r.conclusion.oracle_confirmed}};
  j["notes"] = r.notes;
  return j;
}

inline OrderedJson to_json(const SweepReport& sw) {
  OrderedJson j;
  j["theorem"] = sw.theorem;
  j["kind"] = to_string(sw.kind);
  j["status"] = to_string(sw.overall);
  OrderedJson params = OrderedJson::object();
  for (const auto& [k, v] : sw.params) params[k] = v;
  j["params"] = params;

  // Folded conditions: status is the worst across the sweep; the witness
  // evaluations come from the first failing entry (or the first entry).
  OrderedJson conds = OrderedJson::array();
  if (!sw.entries.empty()) {
    const VerifierReport& first = sw.entries.front().report;
    for (size_t ci = 0; ci < first.conditions.size(); ++ci) {
      const ConditionReport* pick = &first.conditions[ci];
      CondStatus worst = pick->status;
      std::string fail_a;
      for (const auto& e : sw.entries) {
        if (ci >= e.report.conditions.size()) continue;
        const auto& c = e.report.conditions[ci];
        if (c.status == CondStatus::Fail && worst != CondStatus::Fail) {
          worst = CondStatus::Fail;
          pick = &c;
          fail_a = format_rational(e.a);
        }
      }
      OrderedJson cj = to_json(*pick);
      cj["status"] = to_string(worst);
      if (!fail_a.empty()) cj["note"] = std::string(cj["note"]) + " [fails at a = " + fail_a + "]";
      conds.push_back(cj);
    }
  }
  j["conditions"] = conds;
  j["conclusion"] = OrderedJson{{"claimed", sw.conclusion.claimed},
                                {"members", sw.conclusion.members},
                                {"oracle_confirmed", sw.conclusion.oracle_confirmed}};
  j["notes"] = OrderedJson::array();
  OrderedJson sweep = OrderedJson::array();
  for (const auto& e : sw.entries)
    sweep.push_back(OrderedJson{{"a", format_rational(e.a)}, {"report", to_json(e.report)}});
  j["sweep"] = sweep;
  return j;
}

inline std::string render_text(const VerifierReport& r, int indent = 0) {
  std::string pad(static_cast<size_t>(indent), ' ');
  std::ostringstream out;
  out << pad << "theorem " << r.theorem << " [" << to_string(r.kind)
      << "] -> " << to_string(r.status) << "\n";
  for (const auto& [k, v] : r.params) out << pad << "  " << k << " = " << v << "\n";
  for (const auto& c : r.conditions) {
    out << pad << "  condition " << c.id << ": " << to_string(c.status);
    if (!c.witnesses.empty()) {
      out << " at";
      for (const auto& w : c.witnesses) out << " " << w;
    }
    out << "\n";
    for (const auto& e : c.evaluations)
      out << pad << "    " << (e.point.empty() ? "" : e.point + ": ") << e.expr << " = "
          << e.value << "\n";
    if (!c.note.empty()) out << pad << "    note: " << c.note << "\n";
  }
  out << pad << "  conclusion: " << r.conclusion.claimed << "\n";
  out << pad << "  members: {";
  for (size_t i = 0; i < r.conclusion.members.size(); ++i)
    out << (i ? "," : "") << r.conclusion.members[i];
  out << "}\n";
  out << pad << "  oracle-confirmed: " << (r.conclusion.oracle_confirmed ? "yes" : "no") << "\n";
  for (const auto& n : r.notes) out << pad << "  note: " << n << "\n";
  return out.str();
}

inline std::string render_text(const SweepReport& sw) {
  std::ostringstream out;
  out << "theorem " << sw.theorem << " [" << to_string(sw.kind) << "] a-sweep -> "
      << to_string(sw.overall) << "\n";
  for (const auto& e : sw.entries) {
    out << " a = " << format_rational(e.a) << ":\n";
    out << render_text(e.report, 2);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------
inline OrderedJson validation_json(const std::string& kind, const ValidationResult& res,
                                   const PointSet& pts) {
  OrderedJson j;
  j["kind"] = kind;
  j["status"] = res.ok() ? "pass" : "fail";
  if (!res.ok()) {
    const AxiomViolation& v = *res.violation();
    j["axiom"] = v.axiom;
    OrderedJson w = OrderedJson::array();
    for (int i : v.points) w.push_back(pts.label(i));
    j["witness"] = w;
    j["detail"] = v.detail;
  }
  return j;
}

inline std::string validation_text(const std::string& kind, const ValidationResult& res,
                                   const PointSet& pts) {
  if (res.ok()) return kind + " axioms: pass\n";
  const AxiomViolation& v = *res.violation();
  std::string out = kind + " axioms: FAIL (" + v.axiom + ") at (";
  for (size_t i = 0; i < v.points.size(); ++i)
    out += (i ? "," : "") + pts.label(v.points[static_cast<size_t>(i)]);
  out += "): " + v.detail + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Analysis: Fix(f), rho/mu, catalog, certification gap
// ---------------------------------------------------------------------------
struct Analysis {
  SpaceKind kind = SpaceKind::Metric;
  std::vector<std::string> points;
  std::vector<std::string> fix;
  std::optional<Rational> radius;
  FixedFigureCatalog catalog;
  GapReport gap;
};

inline Analysis analyze_instance(const FiniteDistanceSpace& sp, const SelfMap& f,
                                 const std::vector<SimFunc>& pool,
                                 const std::vector<Rational>& a_values) {
  Analysis a;
  a.kind = sp.kind();
  a.points = sp.points().labels();
  a.fix = labels_of(sp.points(), f.fix_set());
  a.radius = displacement_radius(sp, f);
  a.catalog = catalog_fixed_figures(sp, f);
  a.gap = certify_gap(sp, f, pool, a_values);
  return a;
}

inline OrderedJson to_json(const Analysis& a, const FiniteDistanceSpace& sp) {
  OrderedJson j;
  j["kind"] = to_string(a.kind);
  j["points"] = a.points;
  j["fix"] = a.fix;
  j[a.kind == SpaceKind::Metric ? "rho" : "mu"] =
      a.radius ? format_rational(*a.radius) : "absent (identity map)";
  auto shape_json = [&](const std::vector<CatalogEntry>& entries) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& e : entries)
      arr.push_back(OrderedJson{{"figure", e.figure.describe(sp.points())},
                                {"r", format_rational(e.figure.r)},
                                {"members", labels_of(sp.points(), e.members)},
                                {"maximal", e.maximal}});
    return arr;
  };
  j["catalog"] = OrderedJson{{"circles", shape_json(a.catalog.circles)},
                             {"discs", shape_json(a.catalog.discs)},
                             {"ellipses", shape_json(a.catalog.ellipses)},
                             {"closed_ellipses", shape_json(a.catalog.closed_ellipses)}};
  auto gap_json = [&](const std::vector<GapEntry>& entries) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& e : entries)
      arr.push_back(OrderedJson{{"figure", e.figure.describe(sp.points())},
                                {"members", labels_of(sp.points(), e.members)},
                                {"certified", e.certified},
                                {"certified_by", e.certified_by}});
    return arr;
  };
  j["gap"] = OrderedJson{{"circles", gap_json(a.gap.circles)},
                         {"discs", gap_json(a.gap.discs)},
                         {"ellipses", gap_json(a.gap.ellipses)},
                         {"closed_ellipses", gap_json(a.gap.closed_ellipses)},
                         {"uncertified", a.gap.uncertified}};
  return j;
}

inline std::string render_text(const Analysis& a, const FiniteDistanceSpace& sp) {
  std::ostringstream out;
  out << "kind: " << to_string(a.kind) << "\n";
  out << "Fix(f) = {";
  for (size_t i = 0; i < a.fix.size(); ++i) out << (i ? "," : "") << a.fix[i];
  out << "}\n";
  out << (a.kind == SpaceKind::Metric ? "rho" : "mu") << " = "
      << (a.radius ? format_rational(*a.radius) : "absent (identity map)") << "\n";
  auto dump_shape = [&](const char* name, const std::vector<GapEntry>& entries) {
    out << "fixed " << name << " (" << entries.size() << "):\n";
    for (const auto& e : entries) {
      out << "  " << e.figure.describe(sp.points()) << " = {";
      auto lbls = labels_of(sp.points(), e.members);
      for (size_t i = 0; i < lbls.size(); ++i) out << (i ? "," : "") << lbls[i];
      out << "} " << (e.certified ? "[certified: " + e.certified_by + "]" : "[uncertified]")
          << "\n";
    }
  };
  dump_shape("circles", a.gap.circles);
  dump_shape("discs", a.gap.discs);
  dump_shape("ellipses", a.gap.ellipses);
  dump_shape("closed ellipses", a.gap.closed_ellipses);
  return out.str();
}

// ---------------------------------------------------------------------------
// Scan
// ---------------------------------------------------------------------------
inline OrderedJson to_json(const ScanReport& r) {
  OrderedJson j;
  j["seed"] = r.seed;
  j["instances"] = r.instances;
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["zeta_pool"] = r.zeta_pool;
  j["verifier_runs"] = r.verifier_runs;
  j["passes"] = r.passes;
  j["failures"] = r.failures;
  j["vacuous"] = r.vacuous;
  j["not_applicable"] = r.not_applicable;
  j["non_necessity"] = r.non_necessity;
  j["oracle_number_checks"] = r.oracle_number_checks;
  j["subset_catalog_checks"] = r.subset_catalog_checks;
  OrderedJson v = OrderedJson::array();
  for (const auto& x : r.violations)
    v.push_back(OrderedJson{{"instance", x.instance}, {"category", x.category},
                            {"detail", x.detail}});
  j["violations"] = v;
  j["soundness_violations"] = static_cast<long>(r.violations.size());
  return j;
}

inline std::string render_text(const ScanReport& r) {
  std::ostringstream out;
  out << "scan seed=" << r.seed << " instances=" << r.instances << " n=[" << r.n_min << ","
      << r.n_max << "]\n";
  out << "zeta pool:";
  for (const auto& z : r.zeta_pool) out << " " << z;
  out << "\n";
  out << "verifier runs: " << r.verifier_runs << " (pass " << r.passes << ", fail "
      << r.failures << ", vacuous " << r.vacuous << ", not-applicable " << r.not_applicable
      << ")\n";
  out << "non-necessity instances (conclusion true, conditions fail): " << r.non_necessity
      << "\n";
  out << "oracle number checks: " << r.oracle_number_checks << "\n";
  out << "subset catalog checks: " << r.subset_catalog_checks << "\n";
  for (const auto& v : r.violations)
    out << "VIOLATION instance " << v.instance << " [" << v.category << "] " << v.detail
        << "\n";
  out << r.violations.size() << " soundness violations\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Continuous demo
// ---------------------------------------------------------------------------
inline OrderedJson to_json(const EllipseDemoReport& r) {
  OrderedJson j;
  j["samples"] = r.samples;
  j["eps"] = r.eps;
  j["policy"] = r.policy;
  j["max_deviation"] = r.max_deviation;
  j["max_denominator_rel_error"] = r.max_denominator_rel_error;
  j["pass"] = r.pass;
  j["off_figure_probe"] = OrderedJson{{"z", r.probe_z},
                                      {"gz", r.probe_gz},
                                      {"deviation", r.probe_deviation},
                                      {"differs", r.probe_differs}};
  return j;
}

inline std::string render_text(const EllipseDemoReport& r) {
  std::ostringstream out;
  out << "ellipse demo: " << r.samples << " samples, eps = " << r.eps << ", policy "
      << r.policy << "\n";
  out << "max ||g(z) - z|| = " << r.max_deviation << "\n";
  out << "max denominator relative error = " << r.max_denominator_rel_error << "\n";
  out << "off-figure probe " << r.probe_z << " -> " << r.probe_gz
      << " (deviation " << r.probe_deviation << ", differs: "
      << (r.probe_differs ? "yes" : "no") << ")\n";
  out << (r.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace ffl
