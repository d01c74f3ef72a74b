#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ffl/oracle.hpp"
#include "ffl/rng.hpp"
#include "ffl/selfmap.hpp"
#include "ffl/simfunc.hpp"
#include "ffl/space.hpp"
#include "ffl/verifiers.hpp"

namespace ffl {

struct ScanConfig {
  uint64_t seed = 42;
  int instances = 200;
  int n_min = 2;
  int n_max = 8;
  // Cycled per instance index.
  std::vector<SpaceKind> kind_mix = {SpaceKind::Metric, SpaceKind::SMetric, SpaceKind::BMetric};
  enum class MapPolicy {
    MixedFixture,   // each point: coin flip between fixed and a random image
    UniformTable,   // each point: uniformly random image
  };
  MapPolicy map_policy = MapPolicy::MixedFixture;
  std::vector<std::string> zeta_pool = {"linear:0", "linear:1/4", "linear:1/2", "linear:3/4"};
  std::optional<Rational> pinned_a;  // default: the a-sweep {0,1/4,1/2,3/4}
  int subset_check_max_n = 6;        // subset-enumeration catalog check up to this n
  int max_uniqueness_figures = 16;   // per shape, per instance
};

struct ScanViolation {
  int instance = 0;
  std::string category;  // "soundness" | "oracle-mismatch" | "catalog-mismatch"
  std::string detail;
};

struct ScanReport {
  uint64_t seed = 0;
  int instances = 0;
  int n_min = 0, n_max = 0;
  std::vector<std::string> zeta_pool;
  long verifier_runs = 0;
  long passes = 0;
  long failures = 0;
  long vacuous = 0;
  long not_applicable = 0;
  long non_necessity = 0;  // conclusion oracle-confirmed while some condition failed
  long oracle_number_checks = 0;
  long subset_catalog_checks = 0;
  std::vector<ScanViolation> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

// Random positive symmetric weights closed under shortest paths: the
// triangle inequality holds by construction, no rejection needed.
inline MetricTable random_metric(int n, SplitMix64& rng) {
  MetricTable d(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational w(1 + static_cast<int>(rng.below(9)));
      if (rng.below(2)) w /= 2;
      d.at(i, j) = w;
      d.at(j, i) = w;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Rational via = d.at(i, k) + d.at(k, j);
        if (via < d.at(i, j)) d.at(i, j) = via;
      }
  return d;
}

inline std::vector<std::string> index_labels(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

inline std::vector<std::string> random_integer_labels(int n, SplitMix64& rng) {
  std::vector<int> vals;
  while (static_cast<int>(vals.size()) < n) {
    int v = static_cast<int>(rng.below(51)) - 25;
    if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
  }
  std::vector<std::string> labels;
  for (int v : vals) labels.push_back(std::to_string(v));
  return labels;
}

// General random S-metric tables almost never satisfy the quadruple
// inequality, so only two generators are used: generation from a random
// metric, and the |x-z| + |x+z-2y| formula on random integer labels.
inline FiniteDistanceSpace random_s_metric_space(int n, SplitMix64& rng) {
  if (rng.below(2) == 0) {
    MetricTable d = random_metric(n, rng);
    return FiniteDistanceSpace::make(PointSet(index_labels(n)), s_from_metric(d));
  }
  return builtin_space("second-s-metric", random_integer_labels(n, rng));
}

inline FiniteDistanceSpace random_space(SpaceKind kind, int n, SplitMix64& rng) {
  switch (kind) {
    case SpaceKind::Metric:
      return FiniteDistanceSpace::make(PointSet(index_labels(n)), random_metric(n, rng));
    case SpaceKind::SMetric:
      return random_s_metric_space(n, rng);
    case SpaceKind::BMetric: {
      FiniteDistanceSpace s = random_s_metric_space(n, rng);
      return FiniteDistanceSpace::make(PointSet(s.points()), b_from_s(s.s_metric()));
    }
  }
  throw ParameterError("unknown space kind");
}

inline SelfMap random_map(int n, ScanConfig::MapPolicy policy, SplitMix64& rng) {
  std::vector<int> img(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (policy == ScanConfig::MapPolicy::MixedFixture && rng.below(2) == 0)
      img[static_cast<size_t>(i)] = i;
    else
      img[static_cast<size_t>(i)] = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
  }
  return SelfMap(std::move(img), n);
}

}  // namespace detail

// Seeded randomized soundness scan: every generated instance is pushed
// through all applicable verifiers across the zeta pool and the a-sweep.
// A report that passes all conditions while the oracle refutes the
// conclusion is a violation (expected count: zero); conclusions that hold
// despite failed conditions are tallied as non-necessity statistics.
// Also cross-checks rho/mu and M against the naive recomputation, and the
// catalog against subset enumeration on small instances.
inline ScanReport soundness_scan(const ScanConfig& cfg) {
  if (cfg.instances < 1) throw ParameterError("scan requires instances >= 1");
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
    throw ParameterError("scan requires 1 <= n_min <= n_max");
  if (cfg.kind_mix.empty()) throw ParameterError("scan kind mix must be nonempty");
  if (cfg.zeta_pool.empty()) throw ParameterError("scan zeta pool must be nonempty");

  std::vector<SimFunc> pool;
  for (const auto& spec : cfg.zeta_pool) pool.push_back(SimFunc::from_spec(spec));
  std::vector<Rational> a_values =
      cfg.pinned_a ? std::vector<Rational>{*cfg.pinned_a} : default_a_sweep();

  ScanReport rep;
  rep.seed = cfg.seed;
  rep.instances = cfg.instances;
  rep.n_min = cfg.n_min;
  rep.n_max = cfg.n_max;
  rep.zeta_pool = cfg.zeta_pool;

  SplitMix64 rng(cfg.seed);

  for (int idx = 0; idx < cfg.instances; ++idx) {
    int n = rng.range(cfg.n_min, cfg.n_max);
    SpaceKind kind = cfg.kind_mix[static_cast<size_t>(idx) % cfg.kind_mix.size()];
    FiniteDistanceSpace sp = detail::random_space(kind, n, rng);
    SelfMap f = detail::random_map(n, cfg.map_policy, rng);

    auto consider = [&](const VerifierReport& r) {
      ++rep.verifier_runs;
      switch (r.status) {
        case ReportStatus::Pass: ++rep.passes; break;
        case ReportStatus::Fail: ++rep.failures; break;
        case ReportStatus::Vacuous: ++rep.vacuous; break;
        case ReportStatus::NotApplicable: ++rep.not_applicable; break;
      }
      if (r.status == ReportStatus::Pass && !r.conclusion.oracle_confirmed)
        rep.violations.push_back({idx, "soundness",
                                  r.theorem + " passed but the conclusion is refuted: " +
                                      r.conclusion.claimed});
      if (r.status == ReportStatus::Fail && r.conclusion.oracle_confirmed) ++rep.non_necessity;
    };

    // Oracle equivalence for the characteristic numbers.
    {
      auto radius = displacement_radius(sp, f);
      bool radius_checked = false;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (const auto& a : a_values) {
            RecomputedNumbers rn = recompute_numbers(sp, f, a, x, y);
            ++rep.oracle_number_checks;
            if (big_m(sp, f, a, x, y) != rn.m_value)
              rep.violations.push_back({idx, "oracle-mismatch",
                                        "M(" + sp.points().label(x) + "," +
                                            sp.points().label(y) + ") differs at a = " +
                                            format_rational(a)});
            if (!radius_checked && radius != rn.radius) {
              rep.violations.push_back({idx, "oracle-mismatch", "rho/mu differs"});
              radius_checked = true;
            }
          }
    }

    FixedFigureCatalog cat = catalog_fixed_figures(sp, f);
    if (n <= cfg.subset_check_max_n) {
      ++rep.subset_catalog_checks;
      if (auto mismatch = catalog_subset_mismatch(sp, f, cat))
        rep.violations.push_back({idx, "catalog-mismatch", *mismatch});
    }

    for (const auto& zeta : pool) {
      for (const auto& a : a_values) {
        if (kind != SpaceKind::BMetric)
          for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = c1; c2 < n; ++c2)
              consider(verify_fixed_ellipse(sp, f, zeta, a, c1, c2));
        for (int c = 0; c < n; ++c) {
          consider(verify_fixed_circle(sp, f, zeta, a, c));
          consider(verify_fixed_disc(sp, f, zeta, a, c));
        }
      }
      if (kind == SpaceKind::Metric)
        for (int c1 = 0; c1 < n; ++c1)
          for (int c2 = c1; c2 < n; ++c2) consider(verify_closed_ellipse(sp, f, zeta, c1, c2));

      for (int c = 0; c < n; ++c) {
        std::vector<Rational> radii;
        for (int x = 0; x < n; ++x) radii.push_back(sp.pair_dist(x, c));
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        for (const auto& r : radii) {
          if (r == 0 && kind != SpaceKind::Metric) continue;
          consider(verify_phi_circle(sp, f, zeta, r, c));
        }
      }

      for (ShapeKind shape : {ShapeKind::Circle, ShapeKind::Disc, ShapeKind::Ellipse,
                              ShapeKind::ClosedEllipse}) {
        const auto& entries = cat.by_shape(shape);
        int budget = cfg.max_uniqueness_figures;
        for (const auto& e : entries) {
          if (budget-- == 0) break;
          for (const auto& a : a_values) consider(verify_uniqueness(sp, f, e.figure, zeta, a));
        }
      }

      consider(verify_identity_characterization(sp, f, zeta, Rational(1)));
      if (auto radius = displacement_radius(sp, f))
        consider(verify_identity_characterization(sp, f, zeta, *radius));
    }
  }
  return rep;
}

}  // namespace ffl
