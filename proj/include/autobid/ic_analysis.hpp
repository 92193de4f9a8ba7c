#pragma once

// Incentive-compatibility audits for bidder 1 under two-bidder uniform
// bidding.  For each reported target T1' on an ascending grid ending at the
// true target, the equilibrium set is enumerated and the worst / best liquid
// welfare of bidder 1 recorded.  Liquid welfare is always scaled by the TRUE
// target, a positive constant, so every comparison below is a comparison of
// value sums.
//
// Risk-averse IC holds when the worst case is non-decreasing in the report,
// optimistic IC when the best case is.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autobid/core_model.hpp"
#include "autobid/errors.hpp"
#include "autobid/rational.hpp"
#include "autobid/uniform.hpp"

namespace autobid {

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct AuditRow {
  Rational report;
  std::vector<std::size_t> equilibria;
  std::optional<Rational> min_lw;
  std::optional<Rational> max_lw;
};

enum class IcProperty { RiskAverse, Optimistic };

struct Violation {
  IcProperty property = IcProperty::RiskAverse;
  Rational lower_report;   // T'
  Rational higher_report;  // T'' > T'
  Rational lower_value;    // welfare at T'
  Rational higher_value;   // welfare at T'' (< lower_value)
};

struct AuditReport {
  Rational true_target;
  Rational other_target;
  std::vector<AuditRow> rows;
  Verdict raic = Verdict::Pass;
  Verdict oaic = Verdict::Pass;
  std::vector<Violation> violations;
  std::vector<Rational> empty_reports;  // grid points with no equilibrium

  Verdict verdict(IcProperty p) const { return p == IcProperty::RiskAverse ? raic : oaic; }
};

namespace ic_detail {

inline Verdict judge(const std::vector<AuditRow>& rows, IcProperty property, std::vector<Violation>& violations,
                     bool any_empty) {
  bool failed = false;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const auto& lo = property == IcProperty::RiskAverse ? rows[a].min_lw : rows[a].max_lw;
      const auto& hi = property == IcProperty::RiskAverse ? rows[b].min_lw : rows[b].max_lw;
      if (!lo || !hi) continue;
      if (*lo > *hi) {
        failed = true;
        violations.push_back({property, rows[a].report, rows[b].report, *lo, *hi});
      }
    }
  }
  if (failed) return Verdict::Fail;
  return any_empty ? Verdict::Inconclusive : Verdict::Pass;
}

}  // namespace ic_detail

// Verdicts are recomputable from rows alone.
inline void judge_report(AuditReport& report) {
  report.violations.clear();
  report.empty_reports.clear();
  for (const auto& row : report.rows)
    if (row.equilibria.empty()) report.empty_reports.push_back(row.report);
  const bool any_empty = !report.empty_reports.empty();
  report.raic = ic_detail::judge(report.rows, IcProperty::RiskAverse, report.violations, any_empty);
  report.oaic = ic_detail::judge(report.rows, IcProperty::Optimistic, report.violations, any_empty);
}

// `report_grid` must be strictly ascending, positive and <= true_t1; the true
// target is appended when missing.
inline AuditReport ic_audit(const Instance& instance, const Rational& true_t1, const Rational& t2,
                            std::vector<Rational> report_grid) {
  require_normalized_pair(instance);
  if (true_t1 <= 0 || t2 <= 0) throw InputError("targets must be positive");
  if (report_grid.empty()) throw PreconditionError("report grid is empty");
  for (std::size_t g = 0; g < report_grid.size(); ++g) {
    if (report_grid[g] <= 0) throw PreconditionError("report " + to_string(report_grid[g]) + " is not positive");
    if (report_grid[g] > true_t1)
      throw PreconditionError("report " + to_string(report_grid[g]) + " exceeds the true target " + to_string(true_t1));
    if (g > 0 && report_grid[g] <= report_grid[g - 1]) throw PreconditionError("report grid must be strictly ascending");
  }
  if (report_grid.back() != true_t1) report_grid.push_back(true_t1);

  AuditReport report;
  report.true_target = true_t1;
  report.other_target = t2;
  const Targets scale(true_t1, t2);
  for (const Rational& reported : report_grid) {
    AuditRow row;
    row.report = reported;
    row.equilibria = enumerate_equilibria(instance, Targets(reported, t2));
    if (!row.equilibria.empty()) {
      const std::size_t n = instance.queries();
      row.min_lw = liquid_welfare(instance, scale, prefix_allocation(n, row.equilibria.front()), 0);
      row.max_lw = liquid_welfare(instance, scale, prefix_allocation(n, row.equilibria.back()), 0);
    }
    report.rows.push_back(std::move(row));
  }
  judge_report(report);
  return report;
}

// `points` reports evenly spaced over [true_t1 / 10, true_t1].
inline std::vector<Rational> uniform_grid(const Rational& true_t1, std::size_t points = 10) {
  if (points == 0) throw PreconditionError("grid needs at least one point");
  if (points == 1) return {true_t1};
  const Rational lo = true_t1 / 10;
  const Rational step = (true_t1 - lo) / static_cast<int>(points - 1);
  std::vector<Rational> grid;
  for (std::size_t g = 0; g < points; ++g) grid.push_back(lo + step * static_cast<int>(g));
  grid.back() = true_t1;
  return grid;
}

}  // namespace autobid
