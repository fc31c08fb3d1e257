#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qmat/error.hpp"

namespace qmat {

using BigInt = boost::multiprecision::cpp_int;

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree. The zero polynomial has no coefficients; otherwise the last
/// coefficient is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) c_.emplace_back(c);
    trim();
  }
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly constant(BigInt c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
  }
  static IntPoly one() { return constant(1); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const BigInt& operator[](std::size_t i) const { return c_[i]; }
  const BigInt& leading() const { return c_.back(); }
  const std::vector<BigInt>& coeffs() const { return c_; }

  /// Number of trailing powers of q dividing the polynomial.
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return k;
  }

  /// Multiply by q^k (k >= 0).
  IntPoly shifted_up(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    IntPoly r;
    r.c_.assign(k, BigInt(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  /// Divide by q^k; the caller guarantees k <= low_order().
  IntPoly shifted_down(std::size_t k) const {
    if (k == 0) return *this;
    IntPoly r;
    r.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
    return r;
  }

  IntPoly operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  IntPoly& operator+=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  IntPoly& operator-=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(r));
  }

  IntPoly scaled(const BigInt& s) const {
    if (s == 0) return {};
    IntPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Exact division of every coefficient by s.
  IntPoly divided_exact(const BigInt& s) const {
    IntPoly r = *this;
    for (auto& x : r.c_) x /= s;
    return r;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& x : c_) {
      g = boost::multiprecision::gcd(g, x);
      if (g == 1) break;
    }
    return g;
  }

  /// Primitive part with positive leading coefficient.
  IntPoly primitive() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (leading() < 0) g = -g;
    return divided_exact(g);
  }

  /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
  static IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "pseudo-remainder by zero polynomial");
    const int db = b.degree();
    const BigInt& lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
      const BigInt la = a.leading();
      const int shift = a.degree() - db;
      for (auto& x : a.c_) x *= lb;
      for (int i = 0; i <= db; ++i) a.c_[static_cast<std::size_t>(i + shift)] -= la * b.c_[static_cast<std::size_t>(i)];
      a.trim();
    }
    return a;
  }

  /// Exact quotient a / b in Z[q]; throws if b does not divide a.
  static IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (b.is_one()) return a;
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) fail(ErrorKind::Inconsistent, "inexact polynomial division");
    std::vector<BigInt> rem = a.c_;
    std::vector<BigInt> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const int db = b.degree();
    for (int k = a.degree() - db; k >= 0; --k) {
      BigInt& top = rem[static_cast<std::size_t>(k + db)];
      if (top == 0) continue;
      BigInt qk, r;
      boost::multiprecision::divide_qr(top, b.leading(), qk, r);
      if (r != 0) fail(ErrorKind::Inconsistent, "inexact polynomial division");
      for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= qk * b.c_[static_cast<std::size_t>(i)];
      quo[static_cast<std::size_t>(k)] = std::move(qk);
    }
    for (const auto& x : rem)
      if (x != 0) fail(ErrorKind::Inconsistent, "inexact polynomial division");
    return IntPoly(std::move(quo));
  }

  /// Greatest common divisor in Z[q], normalized to a positive leading
  /// coefficient. gcd(0, 0) = 0.
  static IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.normalized_sign();
    if (b.is_zero()) return a.normalized_sign();
    const BigInt c = boost::multiprecision::gcd(a.content(), b.content());
    if (a.is_constant() || b.is_constant()) return constant(c);
    IntPoly u = a.primitive();
    IntPoly v = b.primitive();
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
      IntPoly r = pseudo_remainder(u, v);
      u = std::move(v);
      v = r.primitive();
    }
    return u.primitive().scaled(c);
  }

  IntPoly normalized_sign() const { return (!is_zero() && leading() < 0) ? -*this : *this; }

  /// Human-readable rendering in the variable `var`, highest degree first.
  std::string to_string(const std::string& var = "q", long long offset = 0) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const BigInt& x = c_[k];
      if (x == 0) continue;
      const long long e = static_cast<long long>(k) + offset;
      BigInt mag = x < 0 ? BigInt(-x) : x;
      if (out.empty()) {
        if (x < 0) out += "-";
      } else {
        out += x < 0 ? " - " : " + ";
      }
      if (e == 0) {
        out += mag.str();
        continue;
      }
      if (mag != 1) out += mag.str() + "*";
      out += var;
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

}  // namespace qmat
