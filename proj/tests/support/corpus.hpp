#pragma once

// Seeded random instances for property runs.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "autobid/core_model.hpp"
#include "autobid/generate.hpp"
#include "autobid/rational.hpp"

namespace corpus {

struct PairCase {
  std::uint64_t seed;
  autobid::NormalizedInstance normalized;
  autobid::Targets targets;
};

// m = 2, n in [1, 8], integer values in [1, 100], targets in [1/4, 4].
inline PairCase pair_case(std::uint64_t seed) {
  autobid::SeededRng rng(seed);
  const auto n = static_cast<std::size_t>(rng.uniform(1, 8));
  auto values = autobid::generate_values(rng.engine()(), 2, n, 100);
  const autobid::Rational lo(1, 4), hi(4);
  autobid::Targets targets(rng.rational_in(lo, hi), rng.rational_in(lo, hi));
  return {seed, autobid::normalize_instance(values), targets};
}

inline std::vector<PairCase> pair_corpus(std::size_t count, std::uint64_t base_seed = 1000) {
  std::vector<PairCase> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) out.push_back(pair_case(base_seed + s));
  return out;
}

struct MultiCase {
  std::uint64_t seed;
  autobid::Instance instance;
  autobid::Targets targets;
};

// m in [2, 4], n in [2, 6], raw order.
inline MultiCase multi_case(std::uint64_t seed) {
  autobid::SeededRng rng(seed);
  const auto m = static_cast<std::size_t>(rng.uniform(2, 4));
  const auto n = static_cast<std::size_t>(rng.uniform(2, 6));
  autobid::Instance instance(autobid::generate_values(rng.engine()(), m, n, 100));
  std::vector<autobid::Rational> ts;
  for (std::size_t i = 0; i < m; ++i) ts.push_back(rng.rational_in(autobid::Rational(1, 4), autobid::Rational(4)));
  return {seed, std::move(instance), autobid::Targets(std::move(ts))};
}

}  // namespace corpus
