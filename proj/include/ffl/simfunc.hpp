#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/expression.hpp"
#include "ffl/rational.hpp"
#include "ffl/space.hpp"

namespace ffl {

enum class SimFamily {
  Linear,         // zeta(t,s) = lambda*s - t, lambda in [0,1)
  PhiDeflate,     // zeta(t,s) = s - phi(s) - t
  SlopeScale,     // zeta(t,s) = s*phi(s) - t, phi into [0,1)
  UpperEnvelope,  // zeta(t,s) = eta(s) - t, eta(u) < u for u > 0
  IntegralType,   // zeta(t,s) = s - Psi(t), Psi an antiderivative with Psi(0) = 0
  UserExpression, // zeta(t,s) = arbitrary expression over t, s
};

// Analytic: the family satisfies the simulation-function axioms for every
// admissible parameter (recorded as documentation, not a proof object).
// SampledOnly: axioms are only spot-checked at sample points and grids.
enum class Certificate { Analytic, SampledOnly };

namespace detail {
inline const std::vector<Rational>& constraint_samples() {
  static const std::vector<Rational> pts = {
      Rational(0), Rational(1, 4), Rational(1, 2), Rational(1),
      Rational(2), Rational(4),    Rational(8)};
  return pts;
}
}  // namespace detail

// A simulation-function descriptor. Immutable; evaluation is exact.
class SimFunc {
public:
  static SimFunc linear(Rational lambda) {
    if (lambda < 0 || lambda >= 1)
      throw ParameterError("linear family requires lambda in [0,1), got " +
                           format_rational(lambda));
    SimFunc z(SimFamily::Linear, Certificate::Analytic);
    z.lambda_ = std::move(lambda);
    z.check_zeta1();
    return z;
  }

  // phi over s; phi(0) = 0 and phi(u) > 0 asserted at sample points.
  static SimFunc phi_deflate(Expression phi) {
    SimFunc z(SimFamily::PhiDeflate, Certificate::SampledOnly);
    z.expr_ = std::move(phi);
    z.require_single_var('s');
    for (const auto& u : detail::constraint_samples()) {
      Rational v = z.expr_->eval(u, u);
      if (u == 0 && v != 0)
        throw ParameterError("phi-deflate requires phi(0) = 0, got " + format_rational(v));
      if (u > 0 && v <= 0)
        throw ParameterError("phi-deflate requires phi(u) > 0 for u > 0; phi(" +
                             format_rational(u) + ") = " + format_rational(v));
    }
    z.check_zeta1();
    return z;
  }

  // phi over s, mapping into [0,1); asserted at sample points.
  static SimFunc slope_scale(Expression phi) {
    SimFunc z(SimFamily::SlopeScale, Certificate::SampledOnly);
    z.expr_ = std::move(phi);
    z.require_single_var('s');
    for (const auto& u : detail::constraint_samples()) {
      Rational v = z.expr_->eval(u, u);
      if (v < 0 || v >= 1)
        throw ParameterError("slope-scale requires phi(u) in [0,1); phi(" +
                             format_rational(u) + ") = " + format_rational(v));
    }
    z.check_zeta1();
    return z;
  }

  // eta over s; eta(0) = 0 and eta(u) < u asserted at sample points.
  static SimFunc upper_envelope(Expression eta) {
    SimFunc z(SimFamily::UpperEnvelope, Certificate::SampledOnly);
    z.expr_ = std::move(eta);
    z.require_single_var('s');
    for (const auto& u : detail::constraint_samples()) {
      Rational v = z.expr_->eval(u, u);
      if (u == 0 && v != 0)
        throw ParameterError("upper-envelope requires eta(0) = 0, got " + format_rational(v));
      if (v < 0)
        throw ParameterError("upper-envelope requires eta(u) >= 0; eta(" +
                             format_rational(u) + ") = " + format_rational(v));
      if (u > 0 && v >= u)
        throw ParameterError("upper-envelope requires eta(u) < u for u > 0; eta(" +
                             format_rational(u) + ") = " + format_rational(v));
    }
    z.check_zeta1();
    return z;
  }

  // Psi over t is the antiderivative of the integrand; Psi(0) = 0 required.
  // The integrability side conditions are not verified (noted in reports).
  static SimFunc integral_type(Expression psi) {
    SimFunc z(SimFamily::IntegralType, Certificate::SampledOnly);
    z.expr_ = std::move(psi);
    z.require_single_var('t');
    Rational at0 = z.expr_->eval(Rational(0), Rational(0));
    if (at0 != 0)
      throw ParameterError("integral-type requires Psi(0) = 0, got " + format_rational(at0));
    z.check_zeta1();
    return z;
  }

  static SimFunc user(Expression e) {
    SimFunc z(SimFamily::UserExpression, Certificate::SampledOnly);
    z.expr_ = std::move(e);
    z.check_zeta1();
    return z;
  }

  // Textual form used by documents and the CLI:
  //   linear:1/2   phi-deflate:s/2   slope-scale:1/2   upper-envelope:s/2
  //   integral-type:2t   expr:(7/8)s - t
  static SimFunc from_spec(std::string_view spec) {
    size_t colon = spec.find(':');
    if (colon == std::string_view::npos)
      throw ParameterError("zeta spec must look like 'family:params', got '" +
                           std::string(spec) + "'");
    std::string_view family = spec.substr(0, colon);
    std::string_view arg = spec.substr(colon + 1);
    if (family == "linear") return linear(parse_rational(arg));
    if (family == "phi-deflate") return phi_deflate(Expression::parse(arg));
    if (family == "slope-scale") return slope_scale(Expression::parse(arg));
    if (family == "upper-envelope") return upper_envelope(Expression::parse(arg));
    if (family == "integral-type") return integral_type(Expression::parse(arg));
    if (family == "expr") return user(Expression::parse(arg));
    throw ParameterError("unknown zeta family '" + std::string(family) + "'");
  }

  SimFamily family() const { return family_; }
  Certificate certificate() const { return cert_; }

  // Exact value of the descriptor formula; requires t, s >= 0.
  Rational eval(const Rational& t, const Rational& s) const {
    if (t < 0 || s < 0)
      throw ParameterError("simulation function arguments must be >= 0");
    return eval_extended(t, s);
  }

  // Formula evaluated on arbitrary rationals. Theorem conditions can push
  // the second argument below zero; verifiers evaluate literally and note it.
  Rational eval_extended(const Rational& t, const Rational& s) const {
    switch (family_) {
      case SimFamily::Linear: return Rational(lambda_ * s - t);
      case SimFamily::PhiDeflate: return Rational(s - expr_->eval(s, s) - t);
      case SimFamily::SlopeScale: return Rational(s * expr_->eval(s, s) - t);
      case SimFamily::UpperEnvelope: return Rational(expr_->eval(s, s) - t);
      case SimFamily::IntegralType: return Rational(s - expr_->eval(t, t));
      case SimFamily::UserExpression: return expr_->eval(t, s);
    }
    throw EvalError("corrupt simulation-function descriptor");
  }

  std::string describe() const {
    switch (family_) {
      case SimFamily::Linear: return "linear:" + format_rational(lambda_);
      case SimFamily::PhiDeflate: return "phi-deflate:" + expr_->source();
      case SimFamily::SlopeScale: return "slope-scale:" + expr_->source();
      case SimFamily::UpperEnvelope: return "upper-envelope:" + expr_->source();
      case SimFamily::IntegralType: return "integral-type:" + expr_->source();
      case SimFamily::UserExpression: return "expr:" + expr_->source();
    }
    return "?";
  }

  bool operator==(const SimFunc& o) const {
    return family_ == o.family_ && lambda_ == o.lambda_ &&
           ((!expr_ && !o.expr_) || (expr_ && o.expr_ && *expr_ == *o.expr_));
  }

private:
  SimFunc(SimFamily f, Certificate c) : family_(f), cert_(c) {}

  void check_zeta1() {
    Rational v = eval_extended(Rational(0), Rational(0));
    if (v != 0)
      throw ParameterError("zeta(0,0) must be 0, got " + format_rational(v) +
                           " for " + describe());
  }

  void require_single_var(char allowed) {
    char other = allowed == 't' ? 's' : 't';
    bool bad = other == 't' ? expr_->uses_t() : expr_->uses_s();
    if (bad)
      throw ParameterError(std::string("family parameter expression may only use '") +
                           allowed + "'");
  }

  SimFamily family_;
  Certificate cert_;
  Rational lambda_;
  std::optional<Expression> expr_;
};

// Result of sampling the strict-inequality axiom zeta(t,s) < s - t on a
// grid of positive pairs.
struct Zeta2Report {
  long checked = 0;
  bool pass = false;
  std::optional<std::pair<Rational, Rational>> violation;
  std::string note;
};

inline Zeta2Report check_zeta2(const SimFunc& zeta,
                               const std::vector<std::pair<Rational, Rational>>& grid) {
  if (grid.empty()) throw ParameterError("zeta2 grid must be nonempty");
  for (const auto& [t, s] : grid)
    if (t <= 0 || s <= 0)
      throw ParameterError("zeta2 grid entries must be strictly positive");
  Zeta2Report rep;
  if (zeta.certificate() == Certificate::Analytic) {
    rep.pass = true;
    rep.note = "analytic certificate; sampling skipped";
    return rep;
  }
  for (const auto& [t, s] : grid) {
    ++rep.checked;
    if (!(zeta.eval(t, s) < s - t)) {
      rep.pass = false;
      rep.violation = {t, s};
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

// Base grid {1/4,1/2,1,2,4,8}^2 extended with pairs of the distances the
// space actually attains, so the check is relevant to the instance under
// study. At most 24 distinct attained values are used (evenly thinned).
inline std::vector<std::pair<Rational, Rational>> default_zeta2_grid(
    const FiniteDistanceSpace* space = nullptr) {
  std::vector<Rational> base = {Rational(1, 4), Rational(1, 2), Rational(1),
                                Rational(2),    Rational(4),    Rational(8)};
  std::vector<std::pair<Rational, Rational>> grid;
  for (const auto& t : base)
    for (const auto& s : base) grid.emplace_back(t, s);
  if (space) {
    std::vector<Rational> attained;
    for (int i = 0; i < space->size(); ++i)
      for (int j = 0; j < space->size(); ++j) {
        const Rational& v = space->pair_dist(i, j);
        if (v > 0) attained.push_back(v);
      }
    std::sort(attained.begin(), attained.end());
    attained.erase(std::unique(attained.begin(), attained.end()), attained.end());
    if (attained.size() > 24) {
      std::vector<Rational> thin;
      for (size_t k = 0; k < 24; ++k)
        thin.push_back(attained[k * attained.size() / 24]);
      attained = std::move(thin);
    }
    for (const auto& t : attained)
      for (const auto& s : attained) grid.emplace_back(t, s);
  }
  return grid;
}

enum class Zeta3Variant { Z3, Z3Star };

// Finite-prefix spot check of the limit axioms. A finite prefix cannot
// verify a limit, so the result is always labeled inconclusive; it can
// only be consistent or inconsistent with the axiom.
struct SpotReport {
  Zeta3Variant variant = Zeta3Variant::Z3;
  size_t length = 0;
  size_t tail_begin = 0;
  Rational tail_max;
  bool consistent = false;
  bool inconclusive = true;
  std::string note;
};

inline SpotReport check_zeta3_sequences(const SimFunc& zeta,
                                        const std::vector<Rational>& ts,
                                        const std::vector<Rational>& ss,
                                        Zeta3Variant variant) {
  if (ts.size() != ss.size())
    throw ParameterError("zeta3 sequences must have equal length");
  if (ts.size() < 8)
    throw ParameterError("zeta3 sequences must have length >= 8");
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] <= 0 || ss[i] <= 0)
      throw ParameterError("zeta3 sequences must be strictly positive");
    if (variant == Zeta3Variant::Z3Star && !(ts[i] < ss[i]))
      throw ParameterError("zeta3* requires t_n < s_n for all n; fails at index " +
                           std::to_string(i));
  }
  SpotReport rep;
  rep.variant = variant;
  rep.length = ts.size();
  rep.tail_begin = ts.size() - ts.size() / 4;
  bool first = true;
  for (size_t i = rep.tail_begin; i < ts.size(); ++i) {
    Rational v = zeta.eval(ts[i], ss[i]);
    if (first || v > rep.tail_max) rep.tail_max = v;
    first = false;
  }
  rep.consistent = rep.tail_max < 0;
  rep.note = "finite prefix only; limit axioms cannot be verified mechanically";
  if (zeta.certificate() == Certificate::Analytic)
    rep.note += "; family carries an analytic certificate";
  return rep;
}

}  // namespace ffl
