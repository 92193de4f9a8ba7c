#pragma once

// Game primitives shared by the uniform and non-uniform analyses: value
// matrices, targets, single-winner allocations, prefix/suffix value sums and
// liquid welfare.
//
// Indexing: bidders and queries are 0-based in storage.  The prefix/suffix
// helpers take a query *count* k so that L_k is the first k queries and R_k
// is the 1-based suffix {k, ..., n}; this keeps the uniform-bidding formulas
// readable next to their algebra.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "autobid/errors.hpp"
#include "autobid/rational.hpp"

namespace autobid {

using ValueMatrix = std::vector<std::vector<Rational>>;  // [bidder][query]

class Instance {
 public:
  Instance() = default;

  // Rows are bidders, columns are queries.
  explicit Instance(ValueMatrix values) : values_(std::move(values)) {
    if (values_.size() < 2) throw InputError("an instance needs at least two bidders");
    const std::size_t n = values_.front().size();
    if (n == 0) throw InputError("an instance needs at least one query");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i].size() != n)
        throw InputError("bidder " + std::to_string(i + 1) + " has " + std::to_string(values_[i].size()) +
                         " values, expected " + std::to_string(n));
      for (std::size_t j = 0; j < n; ++j)
        if (values_[i][j] <= 0)
          throw InputError("value of bidder " + std::to_string(i + 1) + " on query " + std::to_string(j + 1) +
                           " must be positive, got " + to_string(values_[i][j]));
    }
  }

  std::size_t bidders() const { return values_.size(); }
  std::size_t queries() const { return values_.front().size(); }

  const Rational& value(std::size_t bidder, std::size_t query) const { return values_.at(bidder).at(query); }
  std::span<const Rational> row(std::size_t bidder) const { return values_.at(bidder); }
  const ValueMatrix& matrix() const { return values_; }

  Rational row_total(std::size_t bidder) const {
    auto r = row(bidder);
    return std::accumulate(r.begin(), r.end(), Rational(0));
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  ValueMatrix values_;
};

class Targets {
 public:
  Targets() = default;
  explicit Targets(std::vector<Rational> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] <= 0)
        throw InputError("target of bidder " + std::to_string(i + 1) + " must be positive, got " +
                         to_string(values_[i]));
  }
  Targets(Rational t1, Rational t2) : Targets(std::vector<Rational>{std::move(t1), std::move(t2)}) {}

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t bidder) const { return values_.at(bidder); }
  const std::vector<Rational>& values() const { return values_; }

  Targets with(std::size_t bidder, Rational target) const {
    auto copy = values_;
    copy.at(bidder) = std::move(target);
    return Targets(std::move(copy));
  }

  friend bool operator==(const Targets&, const Targets&) = default;

 private:
  std::vector<Rational> values_;
};

inline void require_matching(const Instance& instance, const Targets& targets) {
  if (targets.size() != instance.bidders())
    throw PreconditionError("got " + std::to_string(targets.size()) + " targets for " +
                            std::to_string(instance.bidders()) + " bidders");
}

// winner[j] is the bidder allocated query j.
struct Allocation {
  std::vector<std::size_t> winner;

  std::vector<std::size_t> won_by(std::size_t bidder) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < winner.size(); ++j)
      if (winner[j] == bidder) out.push_back(j);
    return out;
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// N_k: bidder 0 wins the first k queries, bidder 1 the rest.
inline Allocation prefix_allocation(std::size_t n, std::size_t k) {
  if (k > n) throw RangeError("allocation index " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  Allocation a;
  a.winner.assign(n, 1);
  std::fill_n(a.winner.begin(), k, 0);
  return a;
}

struct PrefixSuffix {
  Rational prefix;  // sum over queries 1..k
  Rational suffix;  // sum over queries k..n
};

// (V_i(L_k), V_i(R_k)) with 1-based query positions; k in [0, n+1], empty sums are 0.
inline PrefixSuffix prefix_suffix_sums(const Instance& instance, std::size_t bidder, std::size_t k) {
  const std::size_t n = instance.queries();
  if (k > n + 1) throw RangeError("k = " + std::to_string(k) + " outside [0, " + std::to_string(n + 1) + "]");
  if (bidder >= instance.bidders()) throw RangeError("bidder index " + std::to_string(bidder) + " out of range");
  auto row = instance.row(bidder);
  PrefixSuffix out;
  out.prefix = std::accumulate(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(std::min(k, n)), Rational(0));
  const std::size_t first = k == 0 ? 0 : k - 1;
  out.suffix = std::accumulate(row.begin() + static_cast<std::ptrdiff_t>(std::min(first, n)), row.end(), Rational(0));
  return out;
}

inline Rational prefix_value(const Instance& instance, std::size_t bidder, std::size_t k) {
  return prefix_suffix_sums(instance, bidder, k).prefix;
}
inline Rational suffix_value(const Instance& instance, std::size_t bidder, std::size_t k) {
  return prefix_suffix_sums(instance, bidder, k).suffix;
}

// T_i * (value of the queries allocated to bidder i).
inline Rational liquid_welfare(const Instance& instance, const Targets& targets, const Allocation& allocation,
                               std::size_t bidder) {
  if (allocation.winner.size() != instance.queries())
    throw PreconditionError("allocation covers " + std::to_string(allocation.winner.size()) + " queries, instance has " +
                            std::to_string(instance.queries()));
  Rational total = 0;
  for (std::size_t j = 0; j < allocation.winner.size(); ++j)
    if (allocation.winner[j] == bidder) total += instance.value(bidder, j);
  return targets[bidder] * total;
}

struct NormalizedInstance {
  Instance instance;
  // origin[j] lists the raw query indices merged into normalized query j.
  std::vector<std::vector<std::size_t>> origin;
};

// Two bidders: sorts queries by v1/v2 strictly decreasing, merging equal ratios
// by adding their values.  More bidders: returned unchanged.
inline NormalizedInstance normalize_instance(const ValueMatrix& raw) {
  Instance checked(raw);
  const std::size_t n = checked.queries();
  NormalizedInstance out;
  if (checked.bidders() != 2) {
    out.instance = std::move(checked);
    out.origin.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.origin[j] = {j};
    return out;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto ratio = [&](std::size_t j) { return checked.value(0, j) / checked.value(1, j); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });

  ValueMatrix merged(2);
  for (std::size_t j : order) {
    if (!out.origin.empty() && merged[0].back() / merged[1].back() == ratio(j)) {
      merged[0].back() += checked.value(0, j);
      merged[1].back() += checked.value(1, j);
      out.origin.back().push_back(j);
    } else {
      merged[0].push_back(checked.value(0, j));
      merged[1].push_back(checked.value(1, j));
      out.origin.push_back({j});
    }
  }
  out.instance = Instance(std::move(merged));
  return out;
}

inline bool is_normalized_pair(const Instance& instance) {
  if (instance.bidders() != 2) return false;
  for (std::size_t j = 1; j < instance.queries(); ++j)
    if (instance.value(0, j - 1) * instance.value(1, j) <= instance.value(0, j) * instance.value(1, j - 1)) return false;
  return true;
}

inline void require_normalized_pair(const Instance& instance) {
  if (instance.bidders() != 2)
    throw UnsupportedError("uniform-bidding analysis is defined for two bidders, got " +
                           std::to_string(instance.bidders()));
  if (!is_normalized_pair(instance))
    throw PreconditionError("instance is not normalized: v1/v2 ratios must be strictly decreasing");
}

}  // namespace autobid
