#include "riskmetric/real.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace riskmetric {

const Rational& Real::rational() const {
  if (!exact_) throw std::logic_error("rational() called on an inexact value");
  return q_;
}

Real Real::parse(std::string_view text, ArithmeticMode mode) {
  if (mode == ArithmeticMode::Exact) return Real(Rational::parse(text));
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Real n = parse(text.substr(0, slash), mode);
    const Real d = parse(text.substr(slash + 1), mode);
    return inexact(n.to_double() / d.to_double());
  }
  const std::string owned(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(owned, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + owned + "'");
  }
  if (used != owned.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a finite number: '" + owned + "'");
  }
  return inexact(value);
}

std::string Real::to_string() const {
  if (exact_) return q_.to_string();
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d_);
  if (res.ec != std::errc()) return std::to_string(d_);
  return std::string(buf, res.ptr);
}

Real Real::to_mode(ArithmeticMode mode) const {
  if (mode == ArithmeticMode::Float && exact_) return inexact(q_.to_double());
  return *this;
}

Real& Real::operator+=(const Real& rhs) {
  if (exact_ && rhs.exact_) {
    q_ += rhs.q_;
  } else {
    d_ = to_double() + rhs.to_double();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (exact_ && rhs.exact_) {
    q_ -= rhs.q_;
  } else {
    d_ = to_double() - rhs.to_double();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (exact_ && rhs.exact_) {
    q_ *= rhs.q_;
  } else {
    d_ = to_double() * rhs.to_double();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (exact_ && rhs.exact_) {
    q_ /= rhs.q_;
  } else {
    if (rhs.to_double() == 0.0) throw std::domain_error("division by zero");
    d_ = to_double() / rhs.to_double();
    exact_ = false;
  }
  return *this;
}

}  // namespace riskmetric
