#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/rational.hpp"
#include "ffl/selfmap.hpp"
#include "ffl/space.hpp"

namespace ffl {

enum class ShapeKind { Circle, Disc, Ellipse, ClosedEllipse };

inline std::string to_string(ShapeKind s) {
  switch (s) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Disc: return "disc";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::ClosedEllipse: return "closed-ellipse";
  }
  return "?";
}

// A circle/disc (center c1) or ellipse/closed ellipse (foci c1, c2) with
// radius r, tagged with the space kind whose distance defines membership.
struct Figure {
  ShapeKind shape;
  SpaceKind kind;
  int c1 = 0;
  int c2 = 0;  // foci only; equals c1 for circles and discs
  Rational r;

  static Figure circle(SpaceKind kind, int x0, Rational r) {
    return make(ShapeKind::Circle, kind, x0, x0, std::move(r));
  }
  static Figure disc(SpaceKind kind, int x0, Rational r) {
    return make(ShapeKind::Disc, kind, x0, x0, std::move(r));
  }
  static Figure ellipse(SpaceKind kind, int x1, int x2, Rational r) {
    return make(ShapeKind::Ellipse, kind, std::min(x1, x2), std::max(x1, x2), std::move(r));
  }
  static Figure closed_ellipse(SpaceKind kind, int x1, int x2, Rational r) {
    return make(ShapeKind::ClosedEllipse, kind, std::min(x1, x2), std::max(x1, x2),
                std::move(r));
  }

  bool is_ellipse_like() const {
    return shape == ShapeKind::Ellipse || shape == ShapeKind::ClosedEllipse;
  }

  // E.g. "C_{3,6}", "D_{3,6}", "E_6(-1,1)", "Ebar_6(-1,1)"; S-metric and
  // b-metric figures carry the superscripts ^S and ^dS.
  std::string describe(const PointSet& pts) const {
    std::string sup = kind == SpaceKind::Metric ? ""
                      : kind == SpaceKind::SMetric ? "^S" : "^dS";
    switch (shape) {
      case ShapeKind::Circle:
        return "C" + sup + "_{" + pts.label(c1) + "," + format_rational(r) + "}";
      case ShapeKind::Disc:
        return "D" + sup + "_{" + pts.label(c1) + "," + format_rational(r) + "}";
      case ShapeKind::Ellipse:
        return "E" + sup + "_" + format_rational(r) + "(" + pts.label(c1) + "," +
               pts.label(c2) + ")";
      case ShapeKind::ClosedEllipse:
        return "Ebar" + sup + "_" + format_rational(r) + "(" + pts.label(c1) + "," +
               pts.label(c2) + ")";
    }
    return "?";
  }

  bool operator==(const Figure&) const = default;

private:
  static Figure make(ShapeKind shape, SpaceKind kind, int c1, int c2, Rational r) {
    if (r < 0) throw ParameterError("figure radius must be >= 0");
    Figure f;
    f.shape = shape;
    f.kind = kind;
    f.c1 = c1;
    f.c2 = c2;
    f.r = std::move(r);
    return f;
  }
};

// d(x,x0) for circles/discs, d(x,x1) + d(x,x2) for ellipses, with the
// kind-appropriate pairwise distance (S-metric figures use S(x,x,.)).
inline Rational defining_quantity(const FiniteDistanceSpace& sp, const Figure& f, int x) {
  if (f.is_ellipse_like()) return Rational(sp.pair_dist(x, f.c1) + sp.pair_dist(x, f.c2));
  return sp.pair_dist(x, f.c1);
}

inline std::vector<int> members(const FiniteDistanceSpace& sp, const Figure& f) {
  if (f.kind != sp.kind())
    throw KindError("figure kind " + to_string(f.kind) + " does not match space kind " +
                    to_string(sp.kind()));
  bool closed = f.shape == ShapeKind::Disc || f.shape == ShapeKind::ClosedEllipse;
  std::vector<int> out;
  for (int x = 0; x < sp.size(); ++x) {
    Rational q = defining_quantity(sp, f, x);
    if (closed ? q <= f.r : q == f.r) out.push_back(x);
  }
  return out;
}

// rho = min{ d(x,fx) : x != fx } on metric spaces; absent for the identity.
inline std::optional<Rational> rho(const FiniteDistanceSpace& sp, const SelfMap& f) {
  if (sp.kind() != SpaceKind::Metric)
    throw KindError("rho is defined on metric spaces; use mu for " + to_string(sp.kind()));
  std::optional<Rational> best;
  for (int x = 0; x < sp.size(); ++x)
    if (!f.is_fixed(x)) {
      const Rational& v = sp.metric().at(x, f(x));
      if (!best || v < *best) best = v;
    }
  return best;
}

// mu = min{ S(x,x,fx) : x != fx } (S-metric) or min{ d^S(x,fx) : x != fx }
// (b-metric); absent for the identity.
inline std::optional<Rational> mu(const FiniteDistanceSpace& sp, const SelfMap& f) {
  if (sp.kind() == SpaceKind::Metric)
    throw KindError("mu is defined on s-metric and b-metric spaces; use rho");
  std::optional<Rational> best;
  for (int x = 0; x < sp.size(); ++x)
    if (!f.is_fixed(x)) {
      const Rational& v = sp.pair_dist(x, f(x));
      if (!best || v < *best) best = v;
    }
  return best;
}

// The kind-appropriate canonical radius: rho or mu.
inline std::optional<Rational> displacement_radius(const FiniteDistanceSpace& sp,
                                                   const SelfMap& f) {
  return sp.kind() == SpaceKind::Metric ? rho(sp, f) : mu(sp, f);
}

// Divisor of the cross term in M: 2 on metric spaces, 4 on S-metric and
// b-metric spaces (the b-metric display with /2 is a typo; the circle
// theorem's restatement with /4 is used).
inline int cross_term_divisor(SpaceKind kind) {
  return kind == SpaceKind::Metric ? 2 : 4;
}

// M(x,y) = max{ a*d(x,fx) + (1-a)*d(y,fy),
//               (1-a)*d(x,fx) + a*d(y,fy),
//               (d(x,fy) + d(y,fx)) / c }
// with the kind-appropriate distance and cross divisor c.
inline Rational big_m(const FiniteDistanceSpace& sp, const SelfMap& f, const Rational& a,
                      int x, int y) {
  if (a < 0 || a >= 1)
    throw ParameterError("M requires a in [0,1), got " + format_rational(a));
  const Rational& dx = sp.pair_dist(x, f(x));
  const Rational& dy = sp.pair_dist(y, f(y));
  Rational t1 = a * dx + (1 - a) * dy;
  Rational t2 = (1 - a) * dx + a * dy;
  Rational t3 = (sp.pair_dist(x, f(y)) + sp.pair_dist(y, f(x))) /
                Rational(cross_term_divisor(sp.kind()));
  return std::max({t1, t2, t3});
}

// phi_r(u) = 0 at u = 0 and u - r for u > 0 (may be negative).
inline Rational phi_r(const Rational& r, const Rational& u) {
  if (r < 0) throw ParameterError("phi_r requires r >= 0");
  if (u < 0) throw ParameterError("phi_r is defined on u >= 0");
  if (u == 0) return Rational(0);
  return Rational(u - r);
}

// All nonempty figures of one shape whose parameters are attainable:
// centers/foci range over points, radii over the values the defining
// quantity actually attains. Figures are deduplicated by member set; the
// representative is the lexicographically smallest parameter tuple
// (c1, [c2,] r), which is the first one generated below.
inline std::vector<Figure> enumerate_figures(const FiniteDistanceSpace& sp,
                                             ShapeKind shape) {
  const int n = sp.size();
  std::vector<Figure> out;
  std::set<std::vector<int>> seen;

  auto emit = [&](Figure fig) {
    std::vector<int> mem = members(sp, fig);
    if (mem.empty()) return;  // cannot happen for attained radii
    if (seen.insert(mem).second) out.push_back(std::move(fig));
  };

  bool ellipse_like = shape == ShapeKind::Ellipse || shape == ShapeKind::ClosedEllipse;
  if (!ellipse_like) {
    for (int c = 0; c < n; ++c) {
      std::vector<Rational> rs;
      for (int x = 0; x < n; ++x) rs.push_back(sp.pair_dist(x, c));
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      for (const auto& r : rs)
        emit(shape == ShapeKind::Circle ? Figure::circle(sp.kind(), c, r)
                                        : Figure::disc(sp.kind(), c, r));
    }
  } else {
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = c1; c2 < n; ++c2) {
        std::vector<Rational> rs;
        for (int x = 0; x < n; ++x)
          rs.push_back(Rational(sp.pair_dist(x, c1) + sp.pair_dist(x, c2)));
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        for (const auto& r : rs)
          emit(shape == ShapeKind::Ellipse
                   ? Figure::ellipse(sp.kind(), c1, c2, r)
                   : Figure::closed_ellipse(sp.kind(), c1, c2, r));
      }
  }
  return out;
}

inline std::vector<std::string> labels_of(const PointSet& pts, const std::vector<int>& idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(pts.label(i));
  return out;
}

}  // namespace ffl
