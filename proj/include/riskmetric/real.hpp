#pragma once

#include <string>
#include <string_view>

#include "riskmetric/rational.hpp"

namespace riskmetric {

/// Absolute tolerance used whenever an inexact (float mode) value takes part
/// in a comparison.
inline constexpr double kFloatTolerance = 1e-9;

enum class ArithmeticMode { Exact, Float };

/// Scalar that is either an exact rational or a double.
///
/// Exact op exact stays exact; anything touching a double becomes a double.
/// The raw comparison operators compare values as stored; the `approx_*`
/// helpers apply kFloatTolerance when either side is inexact.
class Real {
 public:
  Real() = default;
  Real(int value) : q_(value) {}                // NOLINT(implicit)
  Real(long value) : q_(value) {}               // NOLINT(implicit)
  Real(long long value) : q_(value) {}          // NOLINT(implicit)
  Real(const Rational& value) : q_(value) {}    // NOLINT(implicit)
  Real(std::int64_t num, std::int64_t den) : q_(num, den) {}

  static Real inexact(double value) {
    Real r;
    r.exact_ = false;
    r.d_ = value;
    return r;
  }
  /// Parses "p/q", decimals and exponents exactly, or as a double in float mode.
  static Real parse(std::string_view text, ArithmeticMode mode);

  bool is_exact() const { return exact_; }
  const Rational& rational() const;
  double to_double() const { return exact_ ? q_.to_double() : d_; }
  bool is_zero() const { return exact_ ? q_.num() == 0 : d_ == 0.0; }
  /// "p/q" for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const;
  Real to_mode(ArithmeticMode mode) const;

  Real operator-() const { return exact_ ? Real(-q_) : inexact(-d_); }
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator==(const Real& a, const Real& b) {
    if (a.exact_ && b.exact_) return a.q_ == b.q_;
    return a.to_double() == b.to_double();
  }
  friend bool operator<(const Real& a, const Real& b) {
    if (a.exact_ && b.exact_) return a.q_ < b.q_;
    return a.to_double() < b.to_double();
  }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

 private:
  bool exact_ = true;
  Rational q_;
  double d_ = 0.0;
};

inline bool approx_le(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a <= b;
  return a.to_double() <= b.to_double() + kFloatTolerance;
}
inline bool approx_eq(const Real& a, const Real& b) { return approx_le(a, b) && approx_le(b, a); }
inline bool approx_lt(const Real& a, const Real& b) { return !approx_le(b, a); }

inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real abs(const Real& a) { return a < Real(0) ? -a : a; }

}  // namespace riskmetric
