#pragma once

// Seeded random instances.  Draws go through mt19937_64 with explicit
// rejection sampling so a seed reproduces the same instance on every platform.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

#include "autobid/core_model.hpp"
#include "autobid/errors.hpp"
#include "autobid/rational.hpp"

namespace autobid {

inline Integer floor_of(const Rational& r) {
  Integer q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  if (Rational(q) > r) --q;
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q = floor_of(r);
  if (Rational(q) < r) ++q;
  return q;
}

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw PreconditionError("empty integer range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return lo + static_cast<std::int64_t>(draw % span);
  }

  // Rational p/q with q uniform in [1, max_den] and p uniform over the
  // numerators that keep the value in [lo, hi].
  Rational rational_in(const Rational& lo, const Rational& hi, std::int64_t max_den = 12) {
    const std::int64_t q = uniform(1, max_den);
    const Integer p_lo = ceil_of(lo * q);
    const Integer p_hi = floor_of(hi * q);
    if (p_hi < p_lo) return lo;
    return Rational(uniform(static_cast<std::int64_t>(p_lo), static_cast<std::int64_t>(p_hi)), q);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// m x n integer values uniform in [1, max_value], in raw (unnormalized) order.
inline ValueMatrix generate_values(std::uint64_t seed, std::size_t m, std::size_t n, std::int64_t max_value) {
  if (m < 2) throw PreconditionError("need at least two bidders");
  if (n < 1) throw PreconditionError("need at least one query");
  if (max_value < 1) throw PreconditionError("max value must be at least 1");
  SeededRng rng(seed);
  ValueMatrix values(m, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) values[i][j] = Rational(rng.uniform(1, max_value));
  return values;
}

}  // namespace autobid
