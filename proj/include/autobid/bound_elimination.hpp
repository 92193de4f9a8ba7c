#pragma once

// Exact feasibility for small systems of linear inequalities in two
// nonnegative variables x, y:
//
//     a*x + b*y  <=  c      (or < c when strict)
//
// y is eliminated Fourier-Motzkin style, tracking strictness exactly, which
// leaves an interval for x.  Any x inside that interval admits a y, and
// substituting it back gives y's interval.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "autobid/errors.hpp"
#include "autobid/rational.hpp"

namespace autobid {

struct LinearConstraint {
  Rational a;  // coefficient of x
  Rational b;  // coefficient of y
  Rational c;
  bool strict = false;
};

// {v : lower (<|<=) v (<|<=) upper}.  Lower bounds are always finite because
// the variables live in the nonnegative orthant.
struct FeasibilityInterval {
  ExtRational lower{0};
  bool lower_strict = false;
  ExtRational upper = ExtRational::infinity();
  bool upper_strict = true;

  bool empty() const {
    if (lower < upper) return false;
    return !(lower == upper && !lower_strict && !upper_strict && lower.is_finite());
  }

  bool contains(const Rational& v) const {
    const ExtRational x(v);
    const bool above = lower_strict ? lower < x : lower <= x;
    const bool below = upper_strict ? x < upper : x <= upper;
    return above && below;
  }

  void tighten_lower(const Rational& bound, bool strict) {
    const ExtRational b(bound);
    if (b > lower || (b == lower && strict)) {
      lower = b;
      lower_strict = strict;
    }
  }

  void tighten_upper(const Rational& bound, bool strict) {
    const ExtRational b(bound);
    if (b < upper || (b == upper && strict)) {
      upper = b;
      upper_strict = strict;
    }
  }

  // Deterministic interior point: the midpoint, lower + 1 when unbounded
  // above, or the single point of a degenerate closed interval.
  Rational pick() const {
    if (empty()) throw InvariantViolation("pick() on an empty interval");
    const Rational& lo = lower.value();
    if (upper.is_infinite()) return lo + 1;
    const Rational& hi = upper.value();
    if (lo == hi) return lo;
    return (lo + hi) / 2;
  }
};

namespace detail {

// Bound on a single variable: coefficient * v (<|<=) rhs.
inline bool apply_single(FeasibilityInterval& iv, const Rational& coefficient, const Rational& rhs, bool strict) {
  if (coefficient == 0) return strict ? 0 < rhs : 0 <= rhs;
  if (coefficient > 0)
    iv.tighten_upper(rhs / coefficient, strict);
  else
    iv.tighten_lower(rhs / coefficient, strict);
  return true;
}

}  // namespace detail

class TwoVariableSystem {
 public:
  TwoVariableSystem() = default;
  explicit TwoVariableSystem(std::vector<LinearConstraint> constraints) : constraints_(std::move(constraints)) {}

  void add(LinearConstraint c) { constraints_.push_back(std::move(c)); }
  // a*x + b*y <= c
  void add_le(Rational a, Rational b, Rational c) { constraints_.push_back({std::move(a), std::move(b), std::move(c), false}); }
  // a*x + b*y < c
  void add_lt(Rational a, Rational b, Rational c) { constraints_.push_back({std::move(a), std::move(b), std::move(c), true}); }

  std::span<const LinearConstraint> constraints() const { return constraints_; }

  // Projection of the feasible set onto x; empty() when infeasible.
  FeasibilityInterval project_x() const {
    // y >= 0 and x >= 0 are implicit.
    struct YBound {
      Rational x_coef;  // y (<|<=) or (>|>=) rhs + x_coef * x
      Rational rhs;
      bool strict;
    };
    std::vector<YBound> lowers{{Rational(0), Rational(0), false}};
    std::vector<YBound> uppers;
    FeasibilityInterval x;
    bool consistent = true;

    for (const auto& c : constraints_) {
      if (c.b == 0) {
        consistent = detail::apply_single(x, c.a, c.c, c.strict) && consistent;
      } else if (c.b > 0) {
        uppers.push_back({-c.a / c.b, c.c / c.b, c.strict});
      } else {
        lowers.push_back({-c.a / c.b, c.c / c.b, c.strict});
      }
    }
    // lower.rhs + lower.x_coef*x  (<|<=)  upper.rhs + upper.x_coef*x
    for (const auto& lo : lowers)
      for (const auto& up : uppers)
        consistent = detail::apply_single(x, lo.x_coef - up.x_coef, up.rhs - lo.rhs, lo.strict || up.strict) && consistent;

    if (!consistent) {
      x.lower = ExtRational::infinity();
      x.upper = Rational(0);
    }
    return x;
  }

  // Interval of y once x is fixed.
  FeasibilityInterval y_given(const Rational& x_value) const {
    FeasibilityInterval y;
    bool consistent = x_value >= 0;
    for (const auto& c : constraints_)
      consistent = detail::apply_single(y, c.b, c.c - c.a * x_value, c.strict) && consistent;
    if (!consistent) {
      y.lower = ExtRational::infinity();
      y.upper = Rational(0);
    }
    return y;
  }

  bool satisfied_by(const Rational& x_value, const Rational& y_value) const {
    if (x_value < 0 || y_value < 0) return false;
    for (const auto& c : constraints_) {
      const Rational lhs = c.a * x_value + c.b * y_value;
      if (c.strict ? !(lhs < c.c) : !(lhs <= c.c)) return false;
    }
    return true;
  }

  // A feasible point by the midpoint rule, or nullopt.
  std::optional<std::pair<Rational, Rational>> solve() const {
    const FeasibilityInterval xs = project_x();
    if (xs.empty()) return std::nullopt;
    Rational x_value = xs.pick();
    const FeasibilityInterval ys = y_given(x_value);
    if (ys.empty()) throw InvariantViolation("y interval empty inside the projected x interval");
    Rational y_value = ys.pick();
    if (!satisfied_by(x_value, y_value)) throw InvariantViolation("eliminated point fails the original system");
    return std::pair{std::move(x_value), std::move(y_value)};
  }

 private:
  std::vector<LinearConstraint> constraints_;
};

}  // namespace autobid
