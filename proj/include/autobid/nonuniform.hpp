#pragma once

// Arbitrary per-query bids for m >= 2 bidders in a single-slot second-price
// auction: outcomes, full equilibrium verification by subset enumeration, and
// the two bid constructions that move an equilibrium to a lower or higher
// report of bidder 0's target while keeping it an equilibrium.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autobid/core_model.hpp"
#include "autobid/errors.hpp"
#include "autobid/rational.hpp"
#include "autobid/uniform.hpp"

namespace autobid {

inline constexpr std::size_t kDefaultEnumerationCap = 12;

// bids[i][j]: finite positive or +inf.
struct BidProfile {
  std::vector<std::vector<ExtRational>> bids;

  std::size_t bidders() const { return bids.size(); }
  std::size_t queries() const { return bids.empty() ? 0 : bids.front().size(); }
  const ExtRational& at(std::size_t bidder, std::size_t query) const { return bids.at(bidder).at(query); }

  friend bool operator==(const BidProfile&, const BidProfile&) = default;
};

// b_ij = mu_i T_i v_ij.
inline BidProfile uniform_bids(const Instance& instance, const Targets& targets, const UniformProfile& profile) {
  require_matching(instance, targets);
  if (instance.bidders() != 2) throw UnsupportedError("uniform bids are defined for two bidders");
  BidProfile p;
  p.bids.resize(2);
  const Rational* mu[] = {&profile.mu1, &profile.mu2};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < instance.queries(); ++j)
      p.bids[i].push_back(ExtRational(*mu[i] * targets[i] * instance.value(i, j)));
  return p;
}

struct Outcome {
  Allocation allocation;
  std::vector<Rational> costs;  // price paid by the winner of each query
};

namespace nonuniform_detail {

inline void check_shape(const Instance& instance, const BidProfile& profile) {
  if (profile.bidders() != instance.bidders() || profile.queries() != instance.queries())
    throw PreconditionError("bid profile is " + std::to_string(profile.bidders()) + "x" +
                            std::to_string(profile.queries()) + ", instance is " + std::to_string(instance.bidders()) +
                            "x" + std::to_string(instance.queries()));
  for (const auto& row : profile.bids)
    for (const auto& b : row)
      if (b.is_finite() && b.value() <= 0) throw InputError("finite bids must be positive");
}

// Does a bid of `mine` from `bidder` beat `theirs` from `other`?  Ties go to
// the lowest index under Bidder1Wins and the highest under Bidder2Wins.
inline bool beats(const ExtRational& mine, std::size_t bidder, const ExtRational& theirs, std::size_t other,
                  TieBreak tie) {
  if (mine != theirs) return mine > theirs;
  return tie == TieBreak::Bidder1Wins ? bidder < other : bidder > other;
}

// Highest bid on query j excluding `bidder`, plus the index holding it
// (the one that would win a tie among equal competitors).
struct Competition {
  ExtRational bid{0};
  std::size_t holder = 0;
  bool any = false;
};

inline Competition strongest_rival(const BidProfile& profile, std::size_t query, std::size_t bidder, TieBreak tie) {
  Competition c;
  for (std::size_t i = 0; i < profile.bidders(); ++i) {
    if (i == bidder) continue;
    const auto& b = profile.at(i, query);
    if (!c.any || beats(b, i, c.bid, c.holder, tie)) {
      c.bid = b;
      c.holder = i;
      c.any = true;
    }
  }
  return c;
}

}  // namespace nonuniform_detail

inline Outcome spa_outcome(const Instance& instance, const BidProfile& profile, TieBreak tie = TieBreak::Bidder1Wins) {
  nonuniform_detail::check_shape(instance, profile);
  const std::size_t n = instance.queries();
  Outcome out;
  out.allocation.winner.resize(n);
  out.costs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t infinite = 0;
    for (std::size_t i = 0; i < profile.bidders(); ++i) infinite += profile.at(i, j).is_infinite() ? 1 : 0;
    if (infinite > 1) throw IllFormedProfile("query " + std::to_string(j + 1) + " has more than one +inf bid");

    std::size_t winner = 0;
    for (std::size_t i = 1; i < profile.bidders(); ++i)
      if (nonuniform_detail::beats(profile.at(i, j), i, profile.at(winner, j), winner, tie)) winner = i;
    out.allocation.winner[j] = winner;
    // With at most one +inf bid the runner-up is always finite.
    out.costs[j] = nonuniform_detail::strongest_rival(profile, j, winner, tie).bid.value();
  }
  return out;
}

inline bool satisfies_undominated(const Instance& instance, const Targets& targets, const BidProfile& profile) {
  for (std::size_t i = 0; i < profile.bidders(); ++i)
    for (std::size_t j = 0; j < profile.queries(); ++j) {
      const auto& b = profile.at(i, j);
      if (b.is_finite() && b.value() < targets[i] * instance.value(i, j)) return false;
    }
  return true;
}

struct BidderVerdict {
  Rational spend;        // total cost of won queries
  Rational budget;       // T_i * value of won queries
  bool tcpa = false;
  bool stable = false;
  // Set when unstable: a reachable winning set with more value that still meets tCPA.
  std::optional<std::vector<std::size_t>> deviation;
};

struct EquilibriumVerdict {
  Outcome outcome;
  std::vector<BidderVerdict> bidders;
  bool equilibrium = false;
};

// Checks both equilibrium conditions for every bidder.  Deviations range over
// bids >= T_i v_ij: a query is forced when bidder i's minimum allowed bid
// already wins it, reachable unless a rival bids +inf there, and priced at the
// strongest rival bid.  A bidder is unstable iff some reachable winning set has
// strictly more value than its current one and costs at most T_i times that value.
inline EquilibriumVerdict verify_equilibrium(const Instance& instance, const Targets& targets,
                                             const BidProfile& profile, TieBreak tie = TieBreak::Bidder1Wins,
                                             std::size_t cap = kDefaultEnumerationCap) {
  require_matching(instance, targets);
  nonuniform_detail::check_shape(instance, profile);
  const std::size_t n = instance.queries();
  if (n > cap)
    throw CapacityError("verification enumerates 2^n winning sets; n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
  if (n >= 63) throw CapacityError("n too large for subset enumeration");
  if (!satisfies_undominated(instance, targets, profile))
    throw PreconditionError("bid profile violates the undominated bids assumption (b_ij >= T_i v_ij)");

  EquilibriumVerdict verdict;
  verdict.outcome = spa_outcome(instance, profile, tie);
  verdict.equilibrium = true;

  for (std::size_t i = 0; i < instance.bidders(); ++i) {
    BidderVerdict bv;
    Rational current_value = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (verdict.outcome.allocation.winner[j] != i) continue;
      bv.spend += verdict.outcome.costs[j];
      current_value += instance.value(i, j);
    }
    bv.budget = targets[i] * current_value;
    bv.tcpa = bv.spend <= bv.budget;

    std::vector<std::size_t> forced;
    std::vector<std::size_t> optional;
    std::vector<Rational> price(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto rival = nonuniform_detail::strongest_rival(profile, j, i, tie);
      if (rival.bid.is_infinite()) continue;
      price[j] = rival.bid.value();
      const ExtRational floor_bid(targets[i] * instance.value(i, j));
      if (nonuniform_detail::beats(floor_bid, i, rival.bid, rival.holder, tie))
        forced.push_back(j);
      else
        optional.push_back(j);
    }

    Rational forced_cost = 0;
    Rational forced_value = 0;
    for (std::size_t j : forced) {
      forced_cost += price[j];
      forced_value += instance.value(i, j);
    }

    bv.stable = true;
    const std::uint64_t subsets = std::uint64_t{1} << optional.size();
    for (std::uint64_t mask = 0; mask < subsets && bv.stable; ++mask) {
      Rational cost = forced_cost;
      Rational value = forced_value;
      for (std::size_t b = 0; b < optional.size(); ++b) {
        if ((mask >> b) & 1U) {
          cost += price[optional[b]];
          value += instance.value(i, optional[b]);
        }
      }
      if (value > current_value && cost <= targets[i] * value) {
        bv.stable = false;
        std::vector<std::size_t> set = forced;
        for (std::size_t b = 0; b < optional.size(); ++b)
          if ((mask >> b) & 1U) set.push_back(optional[b]);
        std::sort(set.begin(), set.end());
        bv.deviation = std::move(set);
      }
    }
    verdict.equilibrium = verdict.equilibrium && bv.tcpa && bv.stable;
    verdict.bidders.push_back(std::move(bv));
  }
  return verdict;
}

namespace nonuniform_detail {

// argmax_{i != 0} T_i v_ij, lowest index on ties.
inline std::size_t strongest_other(const Instance& instance, const Targets& targets, std::size_t query) {
  std::size_t best = 1;
  for (std::size_t i = 2; i < instance.bidders(); ++i)
    if (targets[i] * instance.value(i, query) > targets[best] * instance.value(best, query)) best = i;
  return best;
}

inline void set_floor_bids(BidProfile& p, const Instance& instance, const Targets& targets, std::size_t query,
                           std::size_t skip) {
  for (std::size_t i = 0; i < instance.bidders(); ++i)
    if (i != skip) p.bids[i][query] = ExtRational(targets[i] * instance.value(i, query));
}

inline void require_equilibrium(const Instance& instance, const Targets& targets, const BidProfile& profile,
                                TieBreak tie, std::size_t cap) {
  if (!verify_equilibrium(instance, targets, profile, tie, cap).equilibrium)
    throw PreconditionError("starting bid profile is not an equilibrium for its targets");
}

}  // namespace nonuniform_detail

struct Construction {
  BidProfile profile;
  Outcome outcome;
};

// Bidder 0 lowers its reported target to t1_new < T_0.  Queries bidder 0 lost
// stay with their winner, who now bids +inf.  For queries bidder 0 won, with
// w* the strongest other bidder by T_i v_ij: bidder 0 keeps the query at +inf
// if t1_new v_0j >= T_w* v_w*j, otherwise w* takes it at +inf; everyone else
// bids their floor T_i v_ij.
inline Construction construct_lower_report(const Instance& instance, const Targets& targets,
                                           const BidProfile& eq_profile, const Rational& t1_new,
                                           TieBreak tie = TieBreak::Bidder1Wins,
                                           std::size_t cap = kDefaultEnumerationCap) {
  if (!(t1_new < targets[0])) throw PreconditionError("lower report must be strictly below the current target");
  if (t1_new <= 0) throw InputError("targets must be positive");
  nonuniform_detail::require_equilibrium(instance, targets, eq_profile, tie, cap);
  const Targets reported = targets.with(0, t1_new);
  const Outcome original = spa_outcome(instance, eq_profile, tie);

  BidProfile p = eq_profile;
  for (std::size_t j = 0; j < instance.queries(); ++j) {
    const std::size_t w = original.allocation.winner[j];
    if (w != 0) {
      p.bids[w][j] = ExtRational::infinity();
      continue;
    }
    const std::size_t rival = nonuniform_detail::strongest_other(instance, reported, j);
    if (t1_new * instance.value(0, j) >= reported[rival] * instance.value(rival, j)) {
      p.bids[0][j] = ExtRational::infinity();
      nonuniform_detail::set_floor_bids(p, instance, reported, j, 0);
    } else {
      p.bids[rival][j] = ExtRational::infinity();
      nonuniform_detail::set_floor_bids(p, instance, reported, j, rival);
    }
  }
  Outcome outcome = spa_outcome(instance, p, tie);
  return {std::move(p), std::move(outcome)};
}

// Mirror image: bidder 0's true target t1_true exceeds the reported one.
// Bidder 0 keeps every query it won by bidding +inf; each lost query goes to
// bidder 0 at +inf when t1_true v_0j >= T_w* v_w*j and to w* at +inf otherwise,
// with floor bids from everyone else.
inline Construction construct_higher_report(const Instance& instance, const Targets& targets_reported,
                                            const BidProfile& eq_profile, const Rational& t1_true,
                                            TieBreak tie = TieBreak::Bidder1Wins,
                                            std::size_t cap = kDefaultEnumerationCap) {
  if (!(t1_true > targets_reported[0])) throw PreconditionError("true target must be strictly above the reported one");
  nonuniform_detail::require_equilibrium(instance, targets_reported, eq_profile, tie, cap);
  const Targets truthful = targets_reported.with(0, t1_true);
  const Outcome original = spa_outcome(instance, eq_profile, tie);

  BidProfile p = eq_profile;
  for (std::size_t j = 0; j < instance.queries(); ++j) {
    if (original.allocation.winner[j] == 0) {
      p.bids[0][j] = ExtRational::infinity();
      continue;
    }
    const std::size_t rival = nonuniform_detail::strongest_other(instance, truthful, j);
    if (t1_true * instance.value(0, j) >= truthful[rival] * instance.value(rival, j)) {
      p.bids[0][j] = ExtRational::infinity();
      nonuniform_detail::set_floor_bids(p, instance, truthful, j, 0);
    } else {
      p.bids[rival][j] = ExtRational::infinity();
      nonuniform_detail::set_floor_bids(p, instance, truthful, j, rival);
    }
  }
  Outcome outcome = spa_outcome(instance, p, tie);
  return {std::move(p), std::move(outcome)};
}

}  // namespace autobid
