#pragma once

// Exact arithmetic in Q(sqrt2, sqrt3) and polynomials in t over it.

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpk/real.hpp"

namespace hpk {

using Rational = boost::multiprecision::mpq_rational;

/// a + b sqrt2 + c sqrt3 + d sqrt6 with rational a, b, c, d.
class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;
  AlgebraicNumber(long a) : a_(a) {}  // NOLINT: integers embed implicitly
  AlgebraicNumber(Rational a, Rational b = 0, Rational c = 0, Rational d = 0)  // NOLINT
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static AlgebraicNumber sqrt2() { return {0, 1, 0, 0}; }
  static AlgebraicNumber sqrt3() { return {0, 0, 1, 0}; }
  static AlgebraicNumber sqrt6() { return {0, 0, 0, 1}; }
  static AlgebraicNumber ratio(long p, long q) { return Rational(p, q); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
  bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }

  friend bool operator==(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend bool operator!=(const AlgebraicNumber& x, const AlgebraicNumber& y) { return !(x == y); }

  friend AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_};
  }
  friend AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_};
  }
  AlgebraicNumber operator-() const { return {-a_, -b_, -c_, -d_}; }

  friend AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    const auto &a = x.a_, &b = x.b_, &c = x.c_, &d = x.d_;
    const auto &e = y.a_, &f = y.b_, &g = y.c_, &h = y.d_;
    return {a * e + 2 * b * f + 3 * c * g + 6 * d * h, a * f + b * e + 3 * (c * h + d * g),
            a * g + c * e + 2 * (b * h + d * f), a * h + d * e + b * g + c * f};
  }

  /// Multiplicative inverse: rationalize over sqrt3, then over sqrt2.
  AlgebraicNumber inverse() const {
    if (is_zero()) throw std::domain_error("AlgebraicNumber: inverse of zero");
    // x = u + v sqrt3 with u, v in Q(sqrt2); x * (u - v sqrt3) = u^2 - 3 v^2 =: w in Q(sqrt2).
    AlgebraicNumber conj3{a_, b_, -c_, -d_};
    AlgebraicNumber w = *this * conj3;  // c, d components vanish
    // w = p + q sqrt2; 1/w = (p - q sqrt2) / (p^2 - 2 q^2).
    Rational norm = w.a_ * w.a_ - 2 * w.b_ * w.b_;
    AlgebraicNumber winv{w.a_ / norm, -w.b_ / norm, 0, 0};
    return conj3 * winv;
  }

  friend AlgebraicNumber operator/(const AlgebraicNumber& x, const AlgebraicNumber& y) { return x * y.inverse(); }

  AlgebraicNumber& operator+=(const AlgebraicNumber& y) { return *this = *this + y; }
  AlgebraicNumber& operator-=(const AlgebraicNumber& y) { return *this = *this - y; }
  AlgebraicNumber& operator*=(const AlgebraicNumber& y) { return *this = *this * y; }

  Real to_real(long bits) const {
    PrecisionScope scope(bits);
    auto q = [&](const Rational& r) {
      Real num(boost::multiprecision::numerator(r).str(), bits);
      Real den(boost::multiprecision::denominator(r).str(), bits);
      return num / den;
    };
    return q(a_) + q(b_) * sqrt(Real(2)) + q(c_) * sqrt(Real(3)) + q(d_) * sqrt(Real(6));
  }

  /// Canonical text, e.g. "-9/16*sqrt(2)" or "1/2 + sqrt(6)/3" style terms joined by " + ".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto term = [&](const Rational& r, const char* radical) {
      if (r == 0) return;
      Rational m = r < 0 ? Rational(-r) : r;
      if (!out.empty()) out += r < 0 ? " - " : " + ";
      else if (r < 0) out += "-";
      if (*radical == '\0') {
        out += m.str();
      } else if (m == 1) {
        out += radical;
      } else {
        out += m.str() + "*" + radical;
      }
    };
    term(a_, "");
    term(b_, "sqrt(2)");
    term(c_, "sqrt(3)");
    term(d_, "sqrt(6)");
    return out;
  }

 private:
  Rational a_{0}, b_{0}, c_{0}, d_{0};
};

/// p / (q sqrt2).
inline AlgebraicNumber over_sqrt2(long p, long q) { return AlgebraicNumber(0, Rational(p, 2 * q)); }

/// Polynomial in t with AlgebraicNumber coefficients; no trailing zeros.
class TPoly {
 public:
  TPoly() = default;
  TPoly(AlgebraicNumber c) { if (!c.is_zero()) c_.push_back(std::move(c)); }  // NOLINT
  TPoly(long c) : TPoly(AlgebraicNumber(c)) {}                                  // NOLINT
  explicit TPoly(std::vector<AlgebraicNumber> coeffs) : c_(std::move(coeffs)) { trim(); }

  static TPoly t() { return TPoly(std::vector<AlgebraicNumber>{0, 1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  AlgebraicNumber coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : AlgebraicNumber(); }
  AlgebraicNumber constant() const { return coeff(0); }

  friend bool operator==(const TPoly& x, const TPoly& y) { return x.c_ == y.c_; }
  friend bool operator!=(const TPoly& x, const TPoly& y) { return !(x == y); }

  friend TPoly operator+(const TPoly& x, const TPoly& y) {
    std::vector<AlgebraicNumber> r(std::max(x.c_.size(), y.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = x.coeff(static_cast<int>(i)) + y.coeff(static_cast<int>(i));
    return TPoly(std::move(r));
  }
  TPoly operator-() const {
    TPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend TPoly operator-(const TPoly& x, const TPoly& y) { return x + (-y); }
  friend TPoly operator*(const TPoly& x, const TPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<AlgebraicNumber> r(x.c_.size() + y.c_.size() - 1);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
    }
    return TPoly(std::move(r));
  }
  TPoly& operator+=(const TPoly& y) { return *this = *this + y; }

  /// Division by a nonzero constant polynomial.
  friend TPoly operator/(const TPoly& x, const AlgebraicNumber& y) {
    AlgebraicNumber inv = y.inverse();
    TPoly r = x;
    for (auto& c : r.c_) c *= inv;
    return r;
  }

  TPoly derivative() const {
    std::vector<AlgebraicNumber> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * AlgebraicNumber(static_cast<long>(i)));
    return TPoly(std::move(r));
  }

  Real evaluate(const Real& t, long bits) const {
    PrecisionScope scope(bits);
    Real acc(0);
    for (int k = degree(); k >= 0; --k) acc = acc * t + c_[k].to_real(bits);
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    if (is_constant()) return c_[0].to_string();
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string c = c_[k].to_string();
      std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
      if (mono.empty()) out += "(" + c + ")";
      else if (c == "1") out += mono;
      else out += "(" + c + ")*" + mono;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<AlgebraicNumber> c_;
};

}  // namespace hpk
