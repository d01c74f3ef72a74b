#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffl/geometry.hpp"
#include "ffl/selfmap.hpp"
#include "ffl/simfunc.hpp"
#include "ffl/space.hpp"
#include "ffl/verifiers.hpp"

namespace ffl {

struct CatalogEntry {
  Figure figure;             // canonical representative (smallest parameter tuple)
  std::vector<int> members;  // all fixed by f
  bool maximal = false;      // no strict superset among entries of the same shape
};

// Every nonempty all-fixed figure over attainable parameters, per shape,
// deduplicated by member set.
struct FixedFigureCatalog {
  std::vector<CatalogEntry> circles;
  std::vector<CatalogEntry> discs;
  std::vector<CatalogEntry> ellipses;
  std::vector<CatalogEntry> closed_ellipses;

  const std::vector<CatalogEntry>& by_shape(ShapeKind s) const {
    switch (s) {
      case ShapeKind::Circle: return circles;
      case ShapeKind::Disc: return discs;
      case ShapeKind::Ellipse: return ellipses;
      case ShapeKind::ClosedEllipse: return closed_ellipses;
    }
    return circles;
  }
};

namespace detail {

inline void mark_maximal(std::vector<CatalogEntry>& entries) {
  for (auto& e : entries) {
    e.maximal = true;
    for (const auto& other : entries) {
      if (&other == &e || other.members.size() <= e.members.size()) continue;
      if (std::includes(other.members.begin(), other.members.end(), e.members.begin(),
                        e.members.end())) {
        e.maximal = false;
        break;
      }
    }
  }
}

inline std::vector<CatalogEntry> catalog_shape(const FiniteDistanceSpace& sp, const SelfMap& f,
                                               ShapeKind shape) {
  std::vector<CatalogEntry> out;
  for (Figure& fig : enumerate_figures(sp, shape)) {
    std::vector<int> mem = members(sp, fig);
    bool all_fixed = true;
    for (int x : mem)
      if (!f.is_fixed(x)) {
        all_fixed = false;
        break;
      }
    if (all_fixed && !mem.empty()) out.push_back({std::move(fig), std::move(mem), false});
  }
  mark_maximal(out);
  return out;
}

}  // namespace detail

inline FixedFigureCatalog catalog_fixed_figures(const FiniteDistanceSpace& sp,
                                                const SelfMap& f) {
  FixedFigureCatalog cat;
  cat.circles = detail::catalog_shape(sp, f, ShapeKind::Circle);
  cat.discs = detail::catalog_shape(sp, f, ShapeKind::Disc);
  cat.ellipses = detail::catalog_shape(sp, f, ShapeKind::Ellipse);
  cat.closed_ellipses = detail::catalog_shape(sp, f, ShapeKind::ClosedEllipse);
  return cat;
}

// ---------------------------------------------------------------------------
// Independent re-derivation of the characteristic numbers by naive loops
// straight off the tables. Deliberately shares no code with geometry.hpp:
// used to cross-check rho/mu and M in tests and scans.
// ---------------------------------------------------------------------------
struct RecomputedNumbers {
  std::optional<Rational> radius;  // rho or mu; absent for the identity map
  Rational m_value;
};

inline RecomputedNumbers recompute_numbers(const FiniteDistanceSpace& sp, const SelfMap& f,
                                           const Rational& a, int x, int y) {
  RecomputedNumbers out;
  auto max3 = [](const Rational& p, const Rational& q, const Rational& r) {
    Rational m = p;
    if (q > m) m = q;
    if (r > m) m = r;
    return m;
  };
  if (sp.kind() == SpaceKind::Metric) {
    const MetricTable& d = sp.metric();
    for (int i = 0; i < sp.size(); ++i) {
      if (f(i) == i) continue;
      Rational v = d.at(i, f(i));
      if (!out.radius || v < *out.radius) out.radius = v;
    }
    Rational t1 = a * d.at(x, f(x)) + (1 - a) * d.at(y, f(y));
    Rational t2 = (1 - a) * d.at(x, f(x)) + a * d.at(y, f(y));
    Rational t3 = (d.at(x, f(y)) + d.at(y, f(x))) / 2;
    out.m_value = max3(t1, t2, t3);
  } else if (sp.kind() == SpaceKind::SMetric) {
    const SMetricTable& s = sp.s_metric();
    for (int i = 0; i < sp.size(); ++i) {
      if (f(i) == i) continue;
      Rational v = s.at(i, i, f(i));
      if (!out.radius || v < *out.radius) out.radius = v;
    }
    Rational t1 = a * s.at(x, x, f(x)) + (1 - a) * s.at(y, y, f(y));
    Rational t2 = (1 - a) * s.at(x, x, f(x)) + a * s.at(y, y, f(y));
    Rational t3 = (s.at(x, x, f(y)) + s.at(y, y, f(x))) / 4;
    out.m_value = max3(t1, t2, t3);
  } else {
    const BMetricTable& t = sp.b_metric();
    for (int i = 0; i < sp.size(); ++i) {
      if (f(i) == i) continue;
      Rational v = t.at(i, f(i));
      if (!out.radius || v < *out.radius) out.radius = v;
    }
    Rational t1 = a * t.at(x, f(x)) + (1 - a) * t.at(y, f(y));
    Rational t2 = (1 - a) * t.at(x, f(x)) + a * t.at(y, f(y));
    Rational t3 = (t.at(x, f(y)) + t.at(y, f(x))) / 4;
    out.m_value = max3(t1, t2, t3);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Third, subset-driven route to the catalog for small spaces: enumerate
// every nonempty subset of Fix(f) and test directly whether some figure
// of the requested shape realizes exactly that subset.
// ---------------------------------------------------------------------------
namespace detail {

inline Rational raw_pair_quantity(const FiniteDistanceSpace& sp, int x, int c) {
  if (sp.kind() == SpaceKind::Metric) return sp.metric().at(x, c);
  if (sp.kind() == SpaceKind::SMetric) return sp.s_metric().at(x, x, c);
  return sp.b_metric().at(x, c);
}

inline bool subset_realizable(const FiniteDistanceSpace& sp, const std::vector<int>& subset,
                              ShapeKind shape) {
  const int n = sp.size();
  std::vector<bool> in(static_cast<size_t>(n), false);
  for (int t : subset) in[static_cast<size_t>(t)] = true;
  bool ellipse_like = shape == ShapeKind::Ellipse || shape == ShapeKind::ClosedEllipse;
  bool closed = shape == ShapeKind::Disc || shape == ShapeKind::ClosedEllipse;

  auto try_params = [&](int c1, int c2) {
    auto q = [&](int x) {
      Rational v = raw_pair_quantity(sp, x, c1);
      if (ellipse_like) v += raw_pair_quantity(sp, x, c2);
      return v;
    };
    Rational r = q(subset[0]);
    if (closed)
      for (int t : subset) r = std::max(r, q(t));
    else
      for (int t : subset)
        if (q(t) != r) return false;
    for (int x = 0; x < n; ++x) {
      bool member = closed ? q(x) <= r : q(x) == r;
      if (member != in[static_cast<size_t>(x)]) return false;
    }
    return true;
  };

  if (ellipse_like) {
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = c1; c2 < n; ++c2)
        if (try_params(c1, c2)) return true;
  } else {
    for (int c = 0; c < n; ++c)
      if (try_params(c, c)) return true;
  }
  return false;
}

}  // namespace detail

inline std::set<std::vector<int>> subset_enumerated_fixed_sets(const FiniteDistanceSpace& sp,
                                                               const SelfMap& f,
                                                               ShapeKind shape) {
  const std::vector<int>& fix = f.fix_set();
  std::set<std::vector<int>> out;
  if (fix.size() > 20)
    throw ParameterError("subset enumeration is limited to |Fix(f)| <= 20");
  for (unsigned long mask = 1; mask < (1UL << fix.size()); ++mask) {
    std::vector<int> subset;
    for (size_t i = 0; i < fix.size(); ++i)
      if (mask & (1UL << i)) subset.push_back(fix[i]);
    if (detail::subset_realizable(sp, subset, shape)) out.insert(std::move(subset));
  }
  return out;
}

// Compares the catalog against the subset enumeration; returns a
// description of the first mismatch, or nothing when they agree.
inline std::optional<std::string> catalog_subset_mismatch(const FiniteDistanceSpace& sp,
                                                          const SelfMap& f,
                                                          const FixedFigureCatalog& cat) {
  for (ShapeKind shape : {ShapeKind::Circle, ShapeKind::Disc, ShapeKind::Ellipse,
                          ShapeKind::ClosedEllipse}) {
    std::set<std::vector<int>> expected = subset_enumerated_fixed_sets(sp, f, shape);
    std::set<std::vector<int>> got;
    for (const auto& e : cat.by_shape(shape)) got.insert(e.members);
    if (expected != got)
      return "catalog/" + to_string(shape) + " disagrees with subset enumeration: " +
             std::to_string(got.size()) + " vs " + std::to_string(expected.size()) +
             " member sets";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certification gap: which catalog figures does some passing instance of a
// rho/mu-theorem actually claim? The radius-based theorems can only ever
// claim figures of radius rho (resp. mu), so fixed figures at other radii
// are structurally uncertifiable — the gap made concrete.
// ---------------------------------------------------------------------------
struct GapEntry {
  Figure figure;
  std::vector<int> members;
  bool certified = false;
  std::string certified_by;  // parameters of one passing instance
};

struct GapReport {
  std::vector<GapEntry> circles;
  std::vector<GapEntry> discs;
  std::vector<GapEntry> ellipses;
  std::vector<GapEntry> closed_ellipses;
  long uncertified = 0;

  const std::vector<GapEntry>& by_shape(ShapeKind s) const {
    switch (s) {
      case ShapeKind::Circle: return circles;
      case ShapeKind::Disc: return discs;
      case ShapeKind::Ellipse: return ellipses;
      case ShapeKind::ClosedEllipse: return closed_ellipses;
    }
    return circles;
  }
};

inline std::vector<SimFunc> default_zeta_pool() {
  return {SimFunc::linear(Rational(0)), SimFunc::linear(Rational(1, 4)),
          SimFunc::linear(Rational(1, 2)), SimFunc::linear(Rational(3, 4))};
}

inline GapReport certify_gap(const FiniteDistanceSpace& sp, const SelfMap& f,
                             const std::vector<SimFunc>& pool,
                             const std::vector<Rational>& a_values) {
  const PointSet& pts = sp.points();
  FixedFigureCatalog cat = catalog_fixed_figures(sp, f);
  auto radius = displacement_radius(sp, f);

  std::map<ShapeKind, std::map<std::vector<int>, std::string>> certified;
  if (radius) {
    for (int c = 0; c < sp.size(); ++c)
      for (const auto& zeta : pool)
        for (const auto& a : a_values) {
          VerifierReport rc = verify_fixed_circle(sp, f, zeta, a, c);
          if (rc.status == ReportStatus::Pass) {
            std::vector<int> mem = members(sp, Figure::circle(sp.kind(), c, *radius));
            certified[ShapeKind::Circle].try_emplace(
                mem, "fixed-circle: center " + pts.label(c) + ", zeta " + zeta.describe() +
                         ", a " + format_rational(a));
          }
          VerifierReport rd = verify_fixed_disc(sp, f, zeta, a, c);
          if (rd.status == ReportStatus::Pass) {
            std::vector<int> mem = members(sp, Figure::disc(sp.kind(), c, *radius));
            certified[ShapeKind::Disc].try_emplace(
                mem, "fixed-disc: center " + pts.label(c) + ", zeta " + zeta.describe() +
                         ", a " + format_rational(a));
          }
        }
    if (sp.kind() != SpaceKind::BMetric) {
      for (int c1 = 0; c1 < sp.size(); ++c1)
        for (int c2 = c1; c2 < sp.size(); ++c2)
          for (const auto& zeta : pool)
            for (const auto& a : a_values) {
              VerifierReport re = verify_fixed_ellipse(sp, f, zeta, a, c1, c2);
              if (re.status == ReportStatus::Pass) {
                std::vector<int> mem =
                    members(sp, Figure::ellipse(sp.kind(), c1, c2, *radius));
                certified[ShapeKind::Ellipse].try_emplace(
                    mem, "fixed-ellipse: foci (" + pts.label(c1) + "," + pts.label(c2) +
                             "), zeta " + zeta.describe() + ", a " + format_rational(a));
              }
            }
    }
    if (sp.kind() == SpaceKind::Metric) {
      for (int c1 = 0; c1 < sp.size(); ++c1)
        for (int c2 = c1; c2 < sp.size(); ++c2)
          for (const auto& zeta : pool) {
            VerifierReport rb = verify_closed_ellipse(sp, f, zeta, c1, c2);
            if (rb.status == ReportStatus::Pass) {
              std::vector<int> mem =
                  members(sp, Figure::closed_ellipse(sp.kind(), c1, c2, *radius));
              certified[ShapeKind::ClosedEllipse].try_emplace(
                  mem, "closed-ellipse: foci (" + pts.label(c1) + "," + pts.label(c2) +
                           "), zeta " + zeta.describe());
            }
          }
    }
  }

  GapReport gap;
  auto fill = [&](ShapeKind shape, const std::vector<CatalogEntry>& entries,
                  std::vector<GapEntry>& out) {
    const auto& certs = certified[shape];
    for (const auto& e : entries) {
      GapEntry g{e.figure, e.members, false, ""};
      auto it = certs.find(e.members);
      if (it != certs.end()) {
        g.certified = true;
        g.certified_by = it->second;
      } else {
        ++gap.uncertified;
      }
      out.push_back(std::move(g));
    }
  };
  fill(ShapeKind::Circle, cat.circles, gap.circles);
  fill(ShapeKind::Disc, cat.discs, gap.discs);
  fill(ShapeKind::Ellipse, cat.ellipses, gap.ellipses);
  fill(ShapeKind::ClosedEllipse, cat.closed_ellipses, gap.closed_ellipses);
  return gap;
}

}  // namespace ffl
