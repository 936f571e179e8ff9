#pragma once

// Truncated Laurent series in a single formal variable X with TPoly coefficients.
// X is n^{-1/2} (coefficients depend on t) or 1/s (constant coefficients).

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpk/algebraic.hpp"

namespace hpk {

enum class SeriesVariable { kInvSqrtN, kInvS };

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_{e = lead}^{trunc - 1} c_e X^e + O(X^trunc). kExact marks a finite (untruncated) expression.
class AlgebraicSeries {
 public:
  static constexpr int kExact = INT_MAX / 4;

  AlgebraicSeries() = default;
  AlgebraicSeries(SeriesVariable var, int lead, std::vector<TPoly> coeffs, int trunc)
      : var_(var), lead_(lead), c_(std::move(coeffs)), trunc_(trunc) {
    clip();
  }

  /// c X^e, exact.
  static AlgebraicSeries monomial(SeriesVariable var, TPoly c, int e) { return {var, e, {std::move(c)}, kExact}; }
  static AlgebraicSeries constant(SeriesVariable var, TPoly c) { return monomial(var, std::move(c), 0); }
  /// s = X^{-1}, exact.
  static AlgebraicSeries s_variable() { return monomial(SeriesVariable::kInvS, 1, -1); }

  SeriesVariable variable() const { return var_; }
  int lead() const { return lead_; }
  int trunc() const { return trunc_; }
  bool exact() const { return trunc_ >= kExact; }

  /// Coefficient of X^e; zero outside the stored range. Throws past the truncation.
  TPoly coeff(int e) const {
    if (e >= trunc_) throw SeriesError("coefficient X^" + std::to_string(e) + " beyond truncation");
    int i = e - lead_;
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : TPoly();
  }
  void set_coeff(int e, TPoly c) {
    if (e >= trunc_) throw SeriesError("set_coeff beyond truncation");
    if (e < lead_) {
      c_.insert(c_.begin(), lead_ - e, TPoly());
      lead_ = e;
    }
    int i = e - lead_;
    if (i >= static_cast<int>(c_.size())) c_.resize(i + 1);
    c_[i] = std::move(c);
  }
  /// Highest exponent carrying a stored (possibly zero) coefficient.
  int last() const { return lead_ + static_cast<int>(c_.size()) - 1; }

  /// Lowers the truncation (never raises it).
  AlgebraicSeries truncated(int trunc) const {
    AlgebraicSeries r = *this;
    r.trunc_ = std::min(trunc_, trunc);
    r.clip();
    return r;
  }
  /// Declares the stored terms as known through X^{trunc-1} (used while growing an ansatz).
  AlgebraicSeries with_trunc(int trunc) const {
    AlgebraicSeries r = *this;
    r.trunc_ = trunc;
    r.clip();
    return r;
  }

  friend AlgebraicSeries operator+(const AlgebraicSeries& x, const AlgebraicSeries& y) {
    check_same(x, y);
    int lead = std::min(x.lead_, y.lead_);
    int trunc = std::min(x.trunc_, y.trunc_);
    int hi = std::min(trunc - 1, std::max(x.last(), y.last()));
    std::vector<TPoly> c;
    for (int e = lead; e <= hi; ++e) c.push_back(x.get(e) + y.get(e));
    return {x.var_, lead, std::move(c), trunc};
  }
  AlgebraicSeries operator-() const {
    AlgebraicSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend AlgebraicSeries operator-(const AlgebraicSeries& x, const AlgebraicSeries& y) { return x + (-y); }

  friend AlgebraicSeries operator*(const AlgebraicSeries& x, const AlgebraicSeries& y) {
    check_same(x, y);
    int trunc = std::min(sat_add(x.lead_, y.trunc_), sat_add(y.lead_, x.trunc_));
    int lead = x.lead_ + y.lead_;
    int hi = std::min(trunc - 1, x.last() + y.last());
    std::vector<TPoly> c(std::max(0, hi - lead + 1));
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        int k = static_cast<int>(i + j);
        if (lead + k > hi) break;
        if (!y.c_[j].is_zero()) c[k] += x.c_[i] * y.c_[j];
      }
    }
    return {x.var_, lead, std::move(c), trunc};
  }
  friend AlgebraicSeries operator*(const TPoly& k, const AlgebraicSeries& y) { return constant(y.var_, k) * y; }
  friend AlgebraicSeries operator*(long k, const AlgebraicSeries& y) { return TPoly(k) * y; }

  /// Multiplicative inverse; the coefficient at `lead` must be a nonzero constant.
  AlgebraicSeries inverse() const {
    int e0 = lead_;
    while (e0 < trunc_ && get(e0).is_zero()) ++e0;
    if (e0 >= trunc_) throw SeriesError("inverse of a series with no known nonzero term");
    TPoly c0 = get(e0);
    if (!c0.is_constant()) throw SeriesError("inverse needs a constant leading coefficient");
    if (exact() && e0 == last()) return monomial(var_, TPoly(c0.constant().inverse()), -e0);
    // (c0 X^e0 (1 + u))^{-1}, u = O(X); known through relative order trunc - e0.
    int rel = trunc_ - e0;
    if (rel >= kExact / 2) throw SeriesError("inverse of an exact multi-term series needs a truncation");
    AlgebraicNumber inv0 = c0.constant().inverse();
    std::vector<TPoly> out(rel);
    out[0] = TPoly(inv0);
    for (int k = 1; k < rel; ++k) {
      TPoly acc;
      for (int j = 1; j <= k; ++j) acc += get(e0 + j) * out[k - j];
      out[k] = -(acc * TPoly(inv0));
    }
    return {var_, -e0, std::move(out), -e0 + rel};
  }

  friend AlgebraicSeries operator/(const AlgebraicSeries& x, const AlgebraicSeries& y) { return x * y.inverse(); }

  /// d/ds for kInvS (X^e -> -e X^{e+1}); d/dt of the coefficients for kInvSqrtN.
  AlgebraicSeries derivative() const {
    if (var_ == SeriesVariable::kInvSqrtN) {
      AlgebraicSeries r = *this;
      for (auto& c : r.c_) c = c.derivative();
      return r;
    }
    std::vector<TPoly> c;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      int e = lead_ + static_cast<int>(i);
      c.push_back(TPoly(AlgebraicNumber(static_cast<long>(-e))) * c_[i]);
    }
    return {var_, lead_ + 1, std::move(c), sat_add(trunc_, 1)};
  }

  bool is_zero_through(int e_max) const {
    for (int e = lead_; e <= std::min(e_max, last()); ++e) {
      if (!get(e).is_zero()) return false;
    }
    return true;
  }

  /// X evaluated at x (= n^{-1/2} or 1/s), coefficients at t; only stored terms.
  Real evaluate(const Real& x, const Real& t, long bits) const {
    PrecisionScope scope(bits);
    Real acc(0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      acc += c_[i].evaluate(t, bits) * pow(x, static_cast<long>(lead_ + static_cast<int>(i)));
    }
    return acc;
  }

  /// One "c · s^k" (or "c · n^(k/2)") term per nonzero coefficient, highest power first.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      int e = lead_ + static_cast<int>(i);
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].to_string() + ") · " + power_text(e);
    }
    if (out.empty()) out = "0";
    if (!exact()) out += " + O(" + power_text(trunc_) + ")";
    return out;
  }

  std::string power_text(int e) const {
    if (var_ == SeriesVariable::kInvS) return "s^" + std::to_string(-e);
    if (e % 2 == 0) return "n^" + std::to_string(-e / 2);
    return "n^(" + std::to_string(-e) + "/2)";
  }

 private:
  static int sat_add(int a, int b) { return (a >= kExact || b >= kExact) ? kExact : a + b; }
  static void check_same(const AlgebraicSeries& x, const AlgebraicSeries& y) {
    if (x.var_ != y.var_) throw SeriesError("series in different variables");
  }
  TPoly get(int e) const {
    int i = e - lead_;
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : TPoly();
  }
  void clip() {
    int keep = std::max(0, trunc_ - lead_);
    if (static_cast<int>(c_.size()) > keep) c_.resize(keep);
  }

  SeriesVariable var_ = SeriesVariable::kInvS;
  int lead_ = 0;
  std::vector<TPoly> c_;
  int trunc_ = kExact;
};

/// Residual functional: maps the current ansatz to the equation's residual series.
using SeriesEquation = std::function<AlgebraicSeries(const AlgebraicSeries&)>;

/// Fixes the coefficient of X^e in `ansatz` (all lower terms known) so that the residual vanishes
/// at the first order where that coefficient enters. The residual must be affine in it there,
/// with a nonzero constant slope.
inline void solve_next(AlgebraicSeries& ansatz, int e, const SeriesEquation& F) {
  AlgebraicSeries a = ansatz.with_trunc(e + 1);
  auto eval_with = [&](long v) {
    a.set_coeff(e, TPoly(v));
    return F(a);
  };
  AlgebraicSeries F0 = eval_with(0), F1 = eval_with(1), F2 = eval_with(2);
  AlgebraicSeries d1 = F1 - F0, d2 = F2 - F0;
  int top = d1.trunc() - 1;
  int k = d1.lead();
  while (k <= top && d1.coeff(k).is_zero()) ++k;
  if (k > top) throw SeriesError("X^" + std::to_string(e) + ": coefficient does not enter the known residual orders");
  for (int j = F0.lead(); j < k; ++j) {
    if (!F0.coeff(j).is_zero()) {
      throw SeriesError("inconsistent lower order X^" + std::to_string(j) + " while solving X^" + std::to_string(e));
    }
  }
  TPoly slope = d1.coeff(k);
  if (d2.coeff(k) != TPoly(2) * slope) throw SeriesError("singular: residual not affine in the X^" + std::to_string(e) + " coefficient");
  if (!slope.is_constant()) throw SeriesError("singular: non-constant linear coefficient at X^" + std::to_string(e));
  a.set_coeff(e, -(F0.coeff(k) / slope.constant()));
  ansatz = a;
}

}  // namespace hpk
