#pragma once

// Arbitrary-precision real value type over MPFR.
//
// Every Real carries its own binary precision. Binary operations produce a
// result at the larger of the operand precisions; values created from
// literals use the calling thread's default precision, which PrecisionScope
// adjusts. There is no shared mutable state between threads.

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hpk {

namespace detail {
inline mpfr_prec_t& thread_default_bits() {
  thread_local mpfr_prec_t bits = 256;
  return bits;
}
}  // namespace detail

inline mpfr_prec_t default_precision() { return detail::thread_default_bits(); }

/// RAII guard setting the thread-local default precision (in bits).
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(detail::thread_default_bits()) {
    detail::thread_default_bits() = std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN);
  }
  ~PrecisionScope() { detail::thread_default_bits() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real() { init(default_precision()); mpfr_set_zero(v_, 1); }
  Real(int x) { init(default_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long x) { init(default_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long long x) { init(default_precision()); mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN); }
  Real(unsigned long x) { init(default_precision()); mpfr_set_ui(v_, x, MPFR_RNDN); }
  Real(double x) { init(default_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }

  /// Parses a decimal literal ("0.3", "-1e-5") at the thread default precision.
  explicit Real(std::string_view text) : Real(text, default_precision()) {}
  Real(std::string_view text, mpfr_prec_t bits) {
    init(bits);
    std::string s(text);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
  }

  static Real zero(mpfr_prec_t bits) {
    Real r(Uninit{}, bits);
    mpfr_set_zero(r.v_, 1);
    return r;
  }

  Real(const Real& o) { init(mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (v_[0]._mpfr_d == nullptr) {
        init(mpfr_get_prec(o.v_));
      } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      }
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Rounds the stored value to `bits` (in place).
  void round_to(mpfr_prec_t bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; undefined for zero.
  long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)); }

  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    digits = std::max(digits, 1);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  Real operator-() const {
    Real r(Uninit{}, precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  /// this -= a * b, rounding once per operation.
  void sub_product(const Real& a, const Real& b, Real& scratch) {
    mpfr_mul(scratch.v_, a.v_, b.v_, MPFR_RNDN);
    mpfr_sub(v_, v_, scratch.v_, MPFR_RNDN);
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

  friend Real operator+(const Real& a, long b) { Real r(a); r += b; return r; }
  friend Real operator+(long a, const Real& b) { Real r(b); r += a; return r; }
  friend Real operator-(const Real& a, long b) { Real r(a); r -= b; return r; }
  friend Real operator-(long a, const Real& b) {
    Real r(Uninit{}, b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long b) { Real r(a); r *= b; return r; }
  friend Real operator*(long a, const Real& b) { Real r(b); r *= a; return r; }
  friend Real operator/(const Real& a, long b) { Real r(a); r /= b; return r; }
  friend Real operator/(long a, const Real& b) {
    Real r(Uninit{}, b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  // int overloads keep integer literals from being ambiguous between long and Real.
  friend Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
  friend Real operator+(int a, const Real& b) { return static_cast<long>(a) + b; }
  friend Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
  friend Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
  friend Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
  friend Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
  friend Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
  friend Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

  friend Real operator+(const Real& a, double b) { return a + Real::of(b, a); }
  friend Real operator+(double a, const Real& b) { return Real::of(a, b) + b; }
  friend Real operator-(const Real& a, double b) { return a - Real::of(b, a); }
  friend Real operator-(double a, const Real& b) { return Real::of(a, b) - b; }
  friend Real operator*(const Real& a, double b) { return a * Real::of(b, a); }
  friend Real operator*(double a, const Real& b) { return Real::of(a, b) * b; }
  friend Real operator/(const Real& a, double b) { return a / Real::of(b, a); }
  friend Real operator/(double a, const Real& b) { return Real::of(a, b) / b; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, int b) { return a == static_cast<long>(b); }
  friend bool operator<(const Real& a, int b) { return a < static_cast<long>(b); }
  friend bool operator>(const Real& a, int b) { return a > static_cast<long>(b); }
  friend bool operator<=(const Real& a, int b) { return a <= static_cast<long>(b); }
  friend bool operator>=(const Real& a, int b) { return a >= static_cast<long>(b); }

  friend std::ostream& operator<<(std::ostream& os, const Real& x) {
    return os << x.to_string(std::max(6, static_cast<int>(os.precision())));
  }

  // Elementary functions. Results keep the argument's precision.
  friend Real abs(const Real& x) {
    Real r(x);
    mpfr_setsign(r.v_, r.v_, 0, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
  friend Real cbrt(const Real& x) { return unary(x, mpfr_cbrt); }
  friend Real exp(const Real& x) { return unary(x, mpfr_exp); }
  friend Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
  friend Real log(const Real& x) { return unary(x, mpfr_log); }
  friend Real log2(const Real& x) { return unary(x, mpfr_log2); }
  friend Real sqr(const Real& x) { return unary(x, mpfr_sqr); }
  friend Real erfc(const Real& x) { return unary(x, mpfr_erfc); }
  friend Real pow(const Real& x, long k) {
    Real r(Uninit{}, x.precision());
    mpfr_pow_si(r.v_, x.v_, k, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& x, const Real& y) { return binary(x, y, mpfr_pow); }
  /// x * 2^k, exact.
  friend Real ldexp(const Real& x, long k) {
    Real r(Uninit{}, x.precision());
    mpfr_mul_2si(r.v_, x.v_, k, MPFR_RNDN);
    return r;
  }

  static Real pi(mpfr_prec_t bits = default_precision()) {
    Real r(Uninit{}, bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  struct Uninit {};
  Real(Uninit, mpfr_prec_t bits) { init(bits); }

  static Real of(double x, const Real& like) {
    Real r(Uninit{}, like.precision());
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

  void init(mpfr_prec_t bits) { mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN)); }
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  template <class Op>
  static Real binary(const Real& a, const Real& b, Op op) {
    Real r(Uninit{}, std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  template <class Op>
  static Real unary(const Real& a, Op op) {
    Real r(Uninit{}, a.precision());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

/// Copy of `x` rounded to `bits`.
inline Real rounded(Real x, mpfr_prec_t bits) {
  x.round_to(bits);
  return x;
}

}  // namespace hpk
