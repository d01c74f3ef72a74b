#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ffl/rational.hpp"
#include "ffl/space.hpp"

namespace ffl {

enum class CondStatus { Pass, Fail, Vacuous };

inline std::string to_string(CondStatus s) {
  switch (s) {
    case CondStatus::Pass: return "pass";
    case CondStatus::Fail: return "fail";
    case CondStatus::Vacuous: return "vacuous";
  }
  return "?";
}

// One recorded evaluation, e.g. point "12", expr "zeta(6,16)", value "2".
struct Evaluation {
  std::string point;
  std::string expr;
  std::string value;
};

struct ConditionReport {
  std::string id;         // "a", "b", "c", "i", ..., "ze", "zeta2"
  std::string statement;  // what was checked, in instance terms
  CondStatus status = CondStatus::Pass;
  std::vector<std::string> witnesses;  // labels involved in the first failure
  std::vector<Evaluation> evaluations;
  std::string note;
};

enum class ReportStatus { Pass, Fail, Vacuous, NotApplicable };

inline std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass: return "pass";
    case ReportStatus::Fail: return "fail";
    case ReportStatus::Vacuous: return "vacuous";
    case ReportStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

// The claimed conclusion and whether ground truth confirms it. The flag is
// recomputed from the tables regardless of condition outcomes, so a failed
// hypothesis with a true conclusion is visible (non-necessity).
struct ConclusionReport {
  std::string claimed;
  std::vector<std::string> members;
  bool oracle_confirmed = false;
};

struct VerifierReport {
  std::string theorem;
  SpaceKind kind = SpaceKind::Metric;
  std::vector<std::pair<std::string, std::string>> params;  // insertion-ordered
  std::vector<ConditionReport> conditions;
  ReportStatus status = ReportStatus::Pass;
  ConclusionReport conclusion;
  std::vector<std::string> notes;

  const ConditionReport* condition(const std::string& id) const {
    for (const auto& c : conditions)
      if (c.id == id) return &c;
    return nullptr;
  }

  const std::string* param(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return &v;
    return nullptr;
  }
};

// One verification per value of a in the sweep; the figure and conclusion
// do not depend on a.
struct SweepEntry {
  Rational a;
  VerifierReport report;
};

struct SweepReport {
  std::string theorem;
  SpaceKind kind = SpaceKind::Metric;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<SweepEntry> entries;
  ReportStatus overall = ReportStatus::Pass;
  ConclusionReport conclusion;

  bool all_pass() const {
    for (const auto& e : entries)
      if (e.report.status != ReportStatus::Pass) return false;
    return !entries.empty();
  }
};

}  // namespace ffl
