#pragma once

// Systems rebuilt at shifted jump locations, memoized per stencil point, for
// finite-difference derivatives in t1 (and t2).

#include <deque>
#include <functional>
#include <utility>

#include "hpk/ladder.hpp"

namespace hpk {

enum class Quantity { kR, kr, kSigma, kAlpha, kBeta, kH, kLogH, kP, kLogD, kR2, kr2 };

struct FamilyPoint {
  OrthoSystem sys;
  AuxDouble aux;  // R1/r1 carry the single-jump residues when B2 = 0
};

/// Value of `q` at index n; kR/kr refer to the first jump, kR2/kr2 to the second.
inline const Real& quantity(const FamilyPoint& p, Quantity q, int n) {
  switch (q) {
    case Quantity::kR: return p.aux.R1.at(n);
    case Quantity::kr: return p.aux.r1.at(n);
    case Quantity::kR2: return p.aux.R2.at(n);
    case Quantity::kr2: return p.aux.r2.at(n);
    case Quantity::kSigma: return p.aux.sigma.at(n);
    case Quantity::kAlpha: return p.sys.alpha.at(n);
    case Quantity::kBeta: return p.sys.beta.at(n);
    case Quantity::kH: return p.sys.h.at(n);
    case Quantity::kP: return p.sys.p1.at(n);
    case Quantity::kLogD: return p.sys.logD.at(n);
    case Quantity::kLogH: break;
  }
  throw std::invalid_argument("quantity: log h is derived, use quantity_value");
}

inline Real quantity_value(const FamilyPoint& p, Quantity q, int n) {
  if (q == Quantity::kLogH) return log(p.sys.h.at(n));
  return quantity(p, q, n);
}

/// Builds of one weight over varying (t1, t2), all with the same n_max and context.
class Family {
 public:
  Family(WeightSpec base, int n_max, PrecisionContext ctx) : base_(std::move(base)), n_max_(n_max), ctx_(ctx) {}

  const WeightSpec& base() const { return base_; }
  int n_max() const { return n_max_; }
  const PrecisionContext& ctx() const { return ctx_; }

  const FamilyPoint& at(const Real& t1) const { return at(t1, base_.t2); }

  const FamilyPoint& at(const Real& t1, const Real& t2) const {
    for (const auto& e : cache_) {
      if (e.t1 == t1 && e.t2 == t2) return e.point;
    }
    WeightSpec w = base_;
    w.t1 = t1;
    w.t2 = t2;
    OrthoSystem sys = build_system(w, n_max_, ctx_);
    AuxDouble aux = aux_double_from_definitions(sys);
    cache_.push_back({t1, t2, {std::move(sys), std::move(aux)}});
    return cache_.back().point;
  }

  const FamilyPoint& center() const { return at(base_.t1, base_.t2); }

  /// d^k q_n / dt1^k (axis 1) or dt2^k (axis 2) at the base point.
  FdEstimate derivative(Quantity q, int n, int axis, int order) const {
    if (axis == 1) {
      return fd_derivative_estimate([&](const Real& x) { return quantity_value(at(x, base_.t2), q, n); }, base_.t1,
                                    order, ctx_);
    }
    return fd_derivative_estimate([&](const Real& y) { return quantity_value(at(base_.t1, y), q, n); }, base_.t2,
                                  order, ctx_);
  }

  Real d(Quantity q, int n, int axis = 1, int order = 1) const { return derivative(q, n, axis, order).value; }

  /// d^2 q_n / dt1 dt2 at the base point.
  Real mixed(Quantity q, int n) const {
    return fd_mixed_partial([&](const Real& x, const Real& y) { return quantity_value(at(x, y), q, n); }, base_.t1,
                            base_.t2, ctx_);
  }

  std::size_t builds() const { return cache_.size(); }

 private:
  struct Entry {
    Real t1, t2;
    FamilyPoint point;
  };
  WeightSpec base_;
  int n_max_;
  PrecisionContext ctx_;
  mutable std::deque<Entry> cache_;
};

}  // namespace hpk
