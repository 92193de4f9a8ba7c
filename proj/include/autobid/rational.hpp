#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "autobid/errors.hpp"

namespace autobid {

// Arbitrary precision, always kept in lowest terms with a positive denominator.
// Expression templates are off so that arithmetic yields plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

// Parses "p" or "p/q" (optional leading sign on p, q != 0).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) return fail();
  std::string num_s(num);
  if (num_s.front() == '+') num_s.erase(0, 1);
  Integer p(num_s);
  Integer q{std::string(den)};
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

// "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.str(); }

// A rational extended with a single +infinity point.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  ExtRational(int value) : value_(Rational(value)) {}        // NOLINT(google-explicit-constructor)

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  // Throws when infinite.
  const Rational& value() const {
    if (infinite_) throw InvariantViolation("finite value requested from +inf");
    return value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Scaling by a strictly positive rational; +inf stays +inf.
  ExtRational scaled(const Rational& positive) const {
    if (positive <= 0) throw InvariantViolation("ExtRational may only be scaled by a positive rational");
    if (infinite_) return infinity();
    return ExtRational(value_ * positive);
  }

  // +inf - finite = +inf.
  friend ExtRational operator-(const ExtRational& a, const Rational& b) {
    if (a.infinite_) return infinity();
    return ExtRational(a.value_ - b);
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline std::string to_string(const ExtRational& r) { return r.is_infinite() ? std::string("+inf") : to_string(r.value()); }

// Accepts everything parse_rational does plus "+inf" / "inf".
inline ExtRational parse_ext_rational(std::string_view text) {
  if (text == "+inf" || text == "inf") return ExtRational::infinity();
  return ExtRational(parse_rational(text));
}

inline std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << to_string(r); }

}  // namespace autobid
