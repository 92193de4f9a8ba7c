#pragma once

// Two-bidder uniform bidding: bidder i bids mu_i * T_i * v_{i,j} on every
// query, mu_i >= 1.  On a normalized instance (v1/v2 strictly decreasing) any
// multiplier pair produces a prefix allocation N_k, and whether N_k can be an
// equilibrium is decided without searching over multipliers via
//
//     C1(k) > 0,  C2(k) > 0,  kmin <= k <= kmax.
//
// Queries are addressed by 1-based position p in the formulas below; the
// virtual positions 0 and n+1 only ever appear as ratio extremes (+inf / 0).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "autobid/bound_elimination.hpp"
#include "autobid/core_model.hpp"
#include "autobid/errors.hpp"
#include "autobid/rational.hpp"

namespace autobid {

enum class TieBreak { Bidder1Wins, Bidder2Wins };

inline std::string_view to_string(TieBreak tie) { return tie == TieBreak::Bidder1Wins ? "1" : "2"; }

struct UniformProfile {
  Rational mu1{1};
  Rational mu2{1};

  friend bool operator==(const UniformProfile&, const UniformProfile&) = default;
};

namespace uniform_detail {

inline void check_k(const Instance& instance, std::size_t k) {
  if (k > instance.queries())
    throw RangeError("allocation index k = " + std::to_string(k) + " outside [0, " +
                     std::to_string(instance.queries()) + "]");
}

// T1 v_{1,p} / (T2 v_{2,p}) for a real position p in [1, n].
inline Rational scaled_ratio(const Instance& instance, const Targets& targets, std::size_t position) {
  return (targets[0] * instance.value(0, position - 1)) / (targets[1] * instance.value(1, position - 1));
}

// Same, extended to the virtual positions: +inf at 0, 0 at n+1.
inline ExtRational scaled_ratio_ext(const Instance& instance, const Targets& targets, std::size_t position) {
  if (position == 0) return ExtRational::infinity();
  if (position == instance.queries() + 1) return Rational(0);
  return scaled_ratio(instance, targets, position);
}

}  // namespace uniform_detail

// The unique k whose ratio window contains mu2/mu1.
inline std::size_t allocation_from_multipliers(const Instance& instance, const Targets& targets,
                                               const UniformProfile& profile, TieBreak tie = TieBreak::Bidder1Wins) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  if (profile.mu1 <= 0 || profile.mu2 <= 0) throw PreconditionError("multipliers must be positive");
  const Rational bid_ratio = profile.mu2 / profile.mu1;
  std::size_t k = 0;
  for (std::size_t p = 1; p <= instance.queries(); ++p) {
    const Rational r = uniform_detail::scaled_ratio(instance, targets, p);
    const bool bidder1_takes = tie == TieBreak::Bidder1Wins ? r >= bid_ratio : r > bid_ratio;
    if (!bidder1_takes) break;
    k = p;
  }
  return k;
}

struct Inequality {
  Rational lhs;
  Rational rhs;
  bool holds = false;
  // Condition refers to a virtual query and is true by convention.
  bool vacuous = false;
};

struct RatioWindow {
  ExtRational lower;  // ratio at position k+1 (0 when k = n)
  Rational bid_ratio;  // mu2 / mu1
  ExtRational upper;  // ratio at position k (+inf when k = 0)
  bool holds = false;
};

// Verdicts of the six conditions an N_k equilibrium must satisfy.
struct ConditionLedger {
  std::size_t k = 0;
  RatioWindow ratio_window;
  Inequality bidder1_tcpa;    // mu2 T2 V2(L_k) <= T1 V1(L_k)
  Inequality bidder2_tcpa;    // mu1 T1 V1(R_{k+1}) <= T2 V2(R_{k+1})
  Inequality bidder1_stable;  // mu2 T2 V2(L_{k+1}) > T1 V1(L_{k+1})
  Inequality bidder2_stable;  // mu1 T1 V1(R_k) > T2 V2(R_k)
  Inequality undominated;     // min(mu1, mu2) >= 1

  bool all_hold() const {
    return ratio_window.holds && bidder1_tcpa.holds && bidder2_tcpa.holds && bidder1_stable.holds &&
           bidder2_stable.holds && undominated.holds;
  }
};

inline ConditionLedger check_condition_nk(const Instance& instance, const Targets& targets,
                                          const UniformProfile& profile, std::size_t k,
                                          TieBreak tie = TieBreak::Bidder1Wins) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  uniform_detail::check_k(instance, k);
  if (profile.mu1 <= 0 || profile.mu2 <= 0) throw PreconditionError("multipliers must be positive");
  const std::size_t n = instance.queries();
  const Rational& t1 = targets[0];
  const Rational& t2 = targets[1];
  const Rational& mu1 = profile.mu1;
  const Rational& mu2 = profile.mu2;

  ConditionLedger ledger;
  ledger.k = k;

  auto& w = ledger.ratio_window;
  w.lower = uniform_detail::scaled_ratio_ext(instance, targets, k + 1);
  w.upper = uniform_detail::scaled_ratio_ext(instance, targets, k);
  w.bid_ratio = mu2 / mu1;
  const ExtRational r(w.bid_ratio);
  w.holds = tie == TieBreak::Bidder1Wins ? (w.lower < r && r <= w.upper) : (w.lower <= r && r < w.upper);

  ledger.bidder1_tcpa.lhs = mu2 * t2 * prefix_value(instance, 1, k);
  ledger.bidder1_tcpa.rhs = t1 * prefix_value(instance, 0, k);
  ledger.bidder1_tcpa.holds = ledger.bidder1_tcpa.lhs <= ledger.bidder1_tcpa.rhs;

  ledger.bidder2_tcpa.lhs = mu1 * t1 * suffix_value(instance, 0, k + 1);
  ledger.bidder2_tcpa.rhs = t2 * suffix_value(instance, 1, k + 1);
  ledger.bidder2_tcpa.holds = ledger.bidder2_tcpa.lhs <= ledger.bidder2_tcpa.rhs;

  // At k = n the extra query would be the virtual query n+1, which bidder 1 can never win.
  if (k == n) {
    ledger.bidder1_stable.vacuous = true;
    ledger.bidder1_stable.holds = true;
  } else {
    ledger.bidder1_stable.lhs = mu2 * t2 * prefix_value(instance, 1, k + 1);
    ledger.bidder1_stable.rhs = t1 * prefix_value(instance, 0, k + 1);
    ledger.bidder1_stable.holds = ledger.bidder1_stable.lhs > ledger.bidder1_stable.rhs;
  }
  // Symmetric for bidder 2 and the virtual query 0.
  if (k == 0) {
    ledger.bidder2_stable.vacuous = true;
    ledger.bidder2_stable.holds = true;
  } else {
    ledger.bidder2_stable.lhs = mu1 * t1 * suffix_value(instance, 0, k);
    ledger.bidder2_stable.rhs = t2 * suffix_value(instance, 1, k);
    ledger.bidder2_stable.holds = ledger.bidder2_stable.lhs > ledger.bidder2_stable.rhs;
  }

  ledger.undominated.lhs = mu1 < mu2 ? mu1 : mu2;
  ledger.undominated.rhs = 1;
  ledger.undominated.holds = ledger.undominated.lhs >= 1;
  return ledger;
}

struct CValues {
  ExtRational c1;
  ExtRational c2;
};

// C1(k) = v1k V2(R_{k+1}) / (v2k V1(R_{k+1})) - T1 V1(L_{k+1}) / (T2 V2(L_{k+1}))
// C2(k) = T1 V1(R_k) / (T2 V2(R_k)) - v1,k+1 V2(L_k) / (v2,k+1 V1(L_k))
//
// Boundaries: at k = 0 the virtual ratio v1,0/v2,0 is +inf so C1 = +inf, and
// bidder 2's stability is vacuous so C2 = +inf.  At k = n bidder 1's stability
// is vacuous so C1 = +inf, and v1,n+1/v2,n+1 = 0 leaves C2 = T1 v1n / (T2 v2n).
inline CValues c1_c2(const Instance& instance, const Rational& t1, const Rational& t2, std::size_t k) {
  require_normalized_pair(instance);
  uniform_detail::check_k(instance, k);
  if (t1 <= 0 || t2 <= 0) throw InputError("targets must be positive");
  const std::size_t n = instance.queries();
  auto v = [&](std::size_t bidder, std::size_t position) -> const Rational& {
    return instance.value(bidder, position - 1);
  };

  CValues out;
  if (k == 0 || k == n) {
    out.c1 = ExtRational::infinity();
  } else {
    const Rational suffix_term =
        (v(0, k) * suffix_value(instance, 1, k + 1)) / (v(1, k) * suffix_value(instance, 0, k + 1));
    const Rational prefix_term = (t1 * prefix_value(instance, 0, k + 1)) / (t2 * prefix_value(instance, 1, k + 1));
    out.c1 = suffix_term - prefix_term;
  }

  if (k == 0) {
    out.c2 = ExtRational::infinity();
  } else {
    const Rational suffix_term = (t1 * suffix_value(instance, 0, k)) / (t2 * suffix_value(instance, 1, k));
    if (k == n) {
      out.c2 = suffix_term;
    } else {
      const Rational prefix_term =
          (v(0, k + 1) * prefix_value(instance, 1, k)) / (v(1, k + 1) * prefix_value(instance, 0, k));
      out.c2 = suffix_term - prefix_term;
    }
  }
  return out;
}

struct KBounds {
  std::size_t kmin = 0;
  std::size_t kmax = 0;
};

// kmin = min{k : T2 V2(R_{k+1}) >= T1 V1(R_{k+1})}, kmax = max{k : T1 V1(L_k) >= T2 V2(L_k)}.
// Empty sums compare 0 >= 0, so kmin <= n and kmax >= 0.
inline KBounds k_bounds(const Instance& instance, const Targets& targets) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  const std::size_t n = instance.queries();
  const Rational& t1 = targets[0];
  const Rational& t2 = targets[1];
  KBounds out{n, 0};
  for (std::size_t k = 0; k <= n; ++k) {
    if (t2 * suffix_value(instance, 1, k + 1) >= t1 * suffix_value(instance, 0, k + 1)) {
      out.kmin = k;
      break;
    }
  }
  for (std::size_t k = n + 1; k-- > 0;) {
    if (t1 * prefix_value(instance, 0, k) >= t2 * prefix_value(instance, 1, k)) {
      out.kmax = k;
      break;
    }
  }
  return out;
}

struct ExistenceCertificate {
  std::size_t k = 0;
  ExtRational c1;
  ExtRational c2;
  std::size_t kmin = 0;
  std::size_t kmax = 0;
  bool exists = false;
};

inline ExistenceCertificate equilibrium_exists(const Instance& instance, const Targets& targets, std::size_t k) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  uniform_detail::check_k(instance, k);
  const auto [c1, c2] = c1_c2(instance, targets[0], targets[1], k);
  const auto bounds = k_bounds(instance, targets);
  ExistenceCertificate cert;
  cert.k = k;
  cert.c1 = c1;
  cert.c2 = c2;
  cert.kmin = bounds.kmin;
  cert.kmax = bounds.kmax;
  cert.exists = c1 > ExtRational(0) && c2 > ExtRational(0) && bounds.kmin <= k && k <= bounds.kmax;
  return cert;
}

// Ascending list of k for which N_k is an equilibrium allocation.
inline std::vector<std::size_t> enumerate_equilibria(const Instance& instance, const Targets& targets) {
  require_normalized_pair(instance);
  require_matching(instance, targets);
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k <= instance.queries(); ++k)
    if (equilibrium_exists(instance, targets, k).exists) ks.push_back(k);
  return ks;
}

// The linear system in (mu1, mu2) whose solutions pass check_condition_nk,
// written with the per-multiplier ranges
//   T2 V2(R_k)/(T1 V1(R_k))       <  mu1 <= T2 V2(R_{k+1})/(T1 V1(R_{k+1}))
//   T1 V1(L_{k+1})/(T2 V2(L_{k+1})) < mu2 <= T1 V1(L_k)/(T2 V2(L_k))
// plus mu_i >= 1 and the ratio window.  Bounds whose sums are empty are omitted.
inline TwoVariableSystem multiplier_ranges(const Instance& instance, const Targets& targets, std::size_t k,
                                           TieBreak tie) {
  const std::size_t n = instance.queries();
  const Rational& t1 = targets[0];
  const Rational& t2 = targets[1];
  TwoVariableSystem sys;

  if (k >= 1) {
    sys.add_lt(-1, 0, -(t2 * suffix_value(instance, 1, k)) / (t1 * suffix_value(instance, 0, k)));
    sys.add_le(0, 1, (t1 * prefix_value(instance, 0, k)) / (t2 * prefix_value(instance, 1, k)));
  }
  if (k < n) {
    sys.add_le(1, 0, (t2 * suffix_value(instance, 1, k + 1)) / (t1 * suffix_value(instance, 0, k + 1)));
    sys.add_lt(0, -1, -(t1 * prefix_value(instance, 0, k + 1)) / (t2 * prefix_value(instance, 1, k + 1)));
  }
  sys.add_le(-1, 0, -1);
  sys.add_le(0, -1, -1);

  // lower * mu1 < mu2  and  mu2 <= upper * mu1 (strictness swapped for Bidder2Wins).
  const bool bidder1 = tie == TieBreak::Bidder1Wins;
  if (k < n) {
    const Rational lower = uniform_detail::scaled_ratio(instance, targets, k + 1);
    sys.add({lower, Rational(-1), Rational(0), bidder1});
  }
  if (k >= 1) {
    const Rational upper = uniform_detail::scaled_ratio(instance, targets, k);
    sys.add({-upper, Rational(1), Rational(0), !bidder1});
  }
  return sys;
}

// Deterministic multipliers realizing N_k as an equilibrium.
inline UniformProfile witness_multipliers(const Instance& instance, const Targets& targets, std::size_t k,
                                          TieBreak tie = TieBreak::Bidder1Wins) {
  if (!equilibrium_exists(instance, targets, k).exists)
    throw PreconditionError("no uniform equilibrium with allocation N_" + std::to_string(k));
  const auto point = multiplier_ranges(instance, targets, k, tie).solve();
  if (!point) throw InvariantViolation("multiplier ranges infeasible although N_" + std::to_string(k) + " exists");
  UniformProfile profile{point->first, point->second};
  if (!check_condition_nk(instance, targets, profile, k, tie).all_hold())
    throw InvariantViolation("synthesized multipliers fail the N_k equilibrium conditions at k = " + std::to_string(k));
  return profile;
}

}  // namespace autobid
