#pragma once

// Independent route to uniform-equilibrium existence: the six raw N_k
// inequalities are fed, unsimplified, to the two-variable eliminator.  Only
// the prefix/suffix sums are shared with the closed-form route in uniform.hpp.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "autobid/bound_elimination.hpp"
#include "autobid/core_model.hpp"
#include "autobid/rational.hpp"
#include "autobid/uniform.hpp"

namespace autobid {

struct RawFeasibility {
  bool feasible = false;
  std::optional<UniformProfile> witness;
  FeasibilityInterval mu1_range;  // projection of the feasible region onto mu1
};

// The raw system in (x, y) = (mu1, mu2).
inline TwoVariableSystem raw_condition_system(const Instance& instance, const Targets& targets, std::size_t k,
                                              TieBreak tie) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  const std::size_t n = instance.queries();
  if (k > n) throw RangeError("allocation index k = " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  const Rational& t1 = targets[0];
  const Rational& t2 = targets[1];
  const bool ties_to_1 = tie == TieBreak::Bidder1Wins;
  TwoVariableSystem sys;

  // T1 v1,k+1 mu1 < T2 v2,k+1 mu2  (k+1 real), i.e. bidder 2 outbids on query k+1.
  if (k < n) {
    const Rational a = t1 * instance.value(0, k);
    const Rational b = t2 * instance.value(1, k);
    sys.add({a, -b, Rational(0), ties_to_1});
  }
  // T2 v2,k mu2 <= T1 v1,k mu1  (k real), i.e. bidder 1 outbids on query k.
  if (k > 0) {
    const Rational a = t1 * instance.value(0, k - 1);
    const Rational b = t2 * instance.value(1, k - 1);
    sys.add({-a, b, Rational(0), !ties_to_1});
  }

  const auto L1 = [&](std::size_t c) { return prefix_suffix_sums(instance, 0, c).prefix; };
  const auto L2 = [&](std::size_t c) { return prefix_suffix_sums(instance, 1, c).prefix; };
  const auto R1 = [&](std::size_t c) { return prefix_suffix_sums(instance, 0, c).suffix; };
  const auto R2 = [&](std::size_t c) { return prefix_suffix_sums(instance, 1, c).suffix; };

  sys.add_le(0, t2 * L2(k), t1 * L1(k));            // bidder 1 tCPA
  sys.add_le(t1 * R1(k + 1), 0, t2 * R2(k + 1));    // bidder 2 tCPA
  if (k < n) sys.add_lt(0, -(t2 * L2(k + 1)), -(t1 * L1(k + 1)));  // bidder 1 stable
  if (k > 0) sys.add_lt(-(t1 * R1(k)), 0, -(t2 * R2(k)));          // bidder 2 stable
  sys.add_le(-1, 0, -1);  // mu1 >= 1
  sys.add_le(0, -1, -1);  // mu2 >= 1
  return sys;
}

inline RawFeasibility raw_condition_feasible(const Instance& instance, const Targets& targets, std::size_t k,
                                             TieBreak tie = TieBreak::Bidder1Wins) {
  const TwoVariableSystem sys = raw_condition_system(instance, targets, k, tie);
  RawFeasibility out;
  out.mu1_range = sys.project_x();
  if (auto point = sys.solve()) {
    out.feasible = true;
    out.witness = UniformProfile{std::move(point->first), std::move(point->second)};
  }
  return out;
}

struct CrosscheckRow {
  std::size_t k = 0;
  TieBreak tie = TieBreak::Bidder1Wins;
  bool closed_form = false;
  bool raw = false;
  bool witness_verified = true;  // raw witness passes check_condition_nk (true when there is none)
  bool agree() const { return closed_form == raw && witness_verified; }
};

struct Counterexample {
  CrosscheckRow row;
  ExistenceCertificate certificate;
  std::optional<UniformProfile> raw_witness;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  std::vector<std::size_t> equilibria;  // closed-form set, Bidder1Wins
  bool agree = true;
  std::optional<Counterexample> counterexample;  // first disagreement
};

// Compares closed-form existence with raw feasibility for every k and both tie-break modes.
inline CrosscheckReport crosscheck_uniform(const Instance& instance, const Targets& targets) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  CrosscheckReport report;
  for (std::size_t k = 0; k <= instance.queries(); ++k) {
    const ExistenceCertificate cert = equilibrium_exists(instance, targets, k);
    if (cert.exists) report.equilibria.push_back(k);
    for (TieBreak tie : {TieBreak::Bidder1Wins, TieBreak::Bidder2Wins}) {
      const RawFeasibility raw = raw_condition_feasible(instance, targets, k, tie);
      CrosscheckRow row{k, tie, cert.exists, raw.feasible, true};
      if (raw.witness) row.witness_verified = check_condition_nk(instance, targets, *raw.witness, k, tie).all_hold();
      if (!row.agree()) {
        report.agree = false;
        if (!report.counterexample) report.counterexample = Counterexample{row, cert, raw.witness};
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace autobid
