#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "qmat/error.hpp"
#include "qmat/int_poly.hpp"

namespace qmat {

/// Checked addition for q-exponents and torus exponents.
template <class Int>
Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::ExponentOverflow, "exponent addition overflows");
  return r;
}

template <class Int>
Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::ExponentOverflow, "exponent product overflows");
  return r;
}

/// Element of the coefficient field Q(q), q transcendental.
///
/// Stored as q^shift * num / den where neither num nor den is divisible by q,
/// gcd(num, den) = 1 in Z[q] and den has a positive leading coefficient.
/// Zero is num = 0, den = 1, shift = 0. The representation is unique, so
/// equality is component-wise.
class RationalFunction {
 public:
  RationalFunction() : den_(IntPoly::one()) {}
  RationalFunction(long long c) : num_(IntPoly::constant(c)), den_(IntPoly::one()) {}  // NOLINT
  explicit RationalFunction(const BigInt& c) : num_(IntPoly::constant(c)), den_(IntPoly::one()) {}

  /// num / den from arbitrary integer polynomials (ascending coefficients).
  static RationalFunction from_polys(IntPoly num, IntPoly den) {
    if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
    RationalFunction r;
    if (num.is_zero()) return r;
    const std::size_t ln = num.low_order();
    const std::size_t ld = den.low_order();
    r.shift_ = static_cast<std::int64_t>(ln) - static_cast<std::int64_t>(ld);
    r.num_ = num.shifted_down(ln);
    r.den_ = den.shifted_down(ld);
    r.reduce();
    return r;
  }

  /// c * q^k.
  static RationalFunction monomial(long long c, std::int64_t k) {
    RationalFunction r(c);
    if (c != 0) r.shift_ = k;
    return r;
  }
  static RationalFunction q_power(std::int64_t k) { return monomial(1, k); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
  /// True when the value is an integer Laurent polynomial in q.
  bool is_laurent() const { return den_.is_one(); }
  /// True when the value is c * q^k with c a nonzero rational constant.
  bool is_monomial() const { return num_.size() == 1 && den_.size() == 1; }

  std::int64_t shift() const { return shift_; }
  const IntPoly& reduced_num() const { return num_; }
  const IntPoly& reduced_den() const { return den_; }

  /// Numerator and denominator as plain polynomials in q (no negative powers).
  IntPoly numerator() const { return shift_ > 0 ? num_.shifted_up(static_cast<std::size_t>(shift_)) : num_; }
  IntPoly denominator() const { return shift_ < 0 ? den_.shifted_up(static_cast<std::size_t>(-shift_)) : den_; }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  RationalFunction times_q_power(std::int64_t k) const {
    if (is_zero() || k == 0) return *this;
    RationalFunction r = *this;
    r.shift_ = checked_add(shift_, k);
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t m = std::min(a.shift_, b.shift_);
    const auto ua = static_cast<std::size_t>(a.shift_ - m);
    const auto ub = static_cast<std::size_t>(b.shift_ - m);
    RationalFunction r;
    r.shift_ = m;
    if (a.den_ == b.den_) {
      r.num_ = a.num_.shifted_up(ua) + b.num_.shifted_up(ub);
      r.den_ = a.den_;
    } else {
      r.num_ = (a.num_ * b.den_).shifted_up(ua) + (b.num_ * a.den_).shifted_up(ub);
      r.den_ = a.den_ * b.den_;
    }
    if (r.num_.is_zero()) return RationalFunction();
    const std::size_t low = r.num_.low_order();
    if (low > 0) {
      r.num_ = r.num_.shifted_down(low);
      r.shift_ = checked_add(r.shift_, static_cast<std::int64_t>(low));
    }
    r.reduce();
    return r;
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    RationalFunction r;
    r.shift_ = checked_add(a.shift_, b.shift_);
    if (a.den_.is_one() && b.den_.is_one()) {
      r.num_ = a.num_ * b.num_;
      r.den_ = IntPoly::one();
      return r;
    }
    // Cross-cancel so the result is already reduced.
    const IntPoly g1 = IntPoly::gcd(a.num_, b.den_);
    const IntPoly g2 = IntPoly::gcd(b.num_, a.den_);
    r.num_ = IntPoly::divide_exact(a.num_, g1) * IntPoly::divide_exact(b.num_, g2);
    r.den_ = IntPoly::divide_exact(a.den_, g2) * IntPoly::divide_exact(b.den_, g1);
    r.fix_sign();
    return r;
  }

  RationalFunction inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    RationalFunction r;
    r.num_ = den_;
    r.den_ = num_;
    r.shift_ = checked_mul<std::int64_t>(shift_, -1);
    r.fix_sign();
    return r;
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    const long long off = static_cast<long long>(shift_);
    if (den_.is_one()) return num_.to_string("q", off);
    std::string n = num_.to_string("q", off > 0 ? off : 0);
    IntPoly d = off < 0 ? den_.shifted_up(static_cast<std::size_t>(-off)) : den_;
    auto paren = [](const std::string& s, bool multi) { return multi ? "(" + s + ")" : s; };
    return paren(n, num_.size() > 1) + "/" + paren(d.to_string("q"), d.size() > 1 || d.low_order() > 0);
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

 private:
  void fix_sign() {
    if (den_.leading() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  void reduce() {
    fix_sign();
    if (den_.is_one()) return;
    const IntPoly g = IntPoly::gcd(num_, den_);
    if (!g.is_one()) {
      num_ = IntPoly::divide_exact(num_, g);
      den_ = IntPoly::divide_exact(den_, g);
      fix_sign();
    }
  }

  std::int64_t shift_ = 0;
  IntPoly num_;
  IntPoly den_;
};

using RF = RationalFunction;

inline RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) { return a + b; }
inline RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) { return a * b; }
inline RationalFunction rf_inv(const RationalFunction& a) { return a.inverse(); }

/// q^a - q^b; zero exactly when a == b because q is not a root of unity.
inline RationalFunction q_power_minus(std::int64_t a, std::int64_t b) {
  if (a == b) return {};
  return RationalFunction::q_power(a) - RationalFunction::q_power(b);
}

}  // namespace qmat
