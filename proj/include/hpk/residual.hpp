#pragma once

#include "hpk/real.hpp"

namespace hpk {

/// A value together with the magnitude of the largest summand that produced it.
/// Sums keep the larger scale, products multiply scales, quotients divide by
/// the divisor's value. The ratio |value| / scale is the relative residual.
class Tracked {
 public:
  Tracked(const Real& v) : v_(v), s_(abs(v)) {}  // NOLINT: implicit on purpose
  Tracked(long c) : v_(c), s_(abs(Real(c))) {}   // NOLINT
  Tracked(int c) : Tracked(static_cast<long>(c)) {}  // NOLINT

  const Real& value() const { return v_; }
  const Real& scale() const { return s_; }

  friend Tracked operator+(const Tracked& a, const Tracked& b) { return {a.v_ + b.v_, max(a.s_, b.s_)}; }
  friend Tracked operator-(const Tracked& a, const Tracked& b) { return {a.v_ - b.v_, max(a.s_, b.s_)}; }
  friend Tracked operator*(const Tracked& a, const Tracked& b) { return {a.v_ * b.v_, a.s_ * b.s_}; }
  friend Tracked operator/(const Tracked& a, const Tracked& b) { return {a.v_ / b.v_, a.s_ / abs(b.v_)}; }
  Tracked operator-() const { return {-v_, s_}; }

  friend Tracked sq(const Tracked& a) { return a * a; }

 private:
  Tracked(Real v, Real s) : v_(std::move(v)), s_(std::move(s)) {}
  Real v_, s_;
};

/// |lhs - rhs| / scale, or 0 when everything vanishes.
inline Real relative_residual(const Tracked& lhs, const Tracked& rhs) {
  Tracked d = lhs - rhs;
  if (d.scale().is_zero()) return Real::zero(d.value().precision());
  return abs(d.value()) / d.scale();
}

inline Real relative_residual(const Tracked& expr) { return relative_residual(expr, Tracked(0L)); }

}  // namespace hpk
