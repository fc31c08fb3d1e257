#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "qmat/context.hpp"
#include "qmat/error.hpp"
#include "qmat/rational_function.hpp"

namespace qmat {

/// Exponent vector gamma in Z^{n^2}, slots in lexicographic generator order.
/// Storage is inline with room for n <= kMaxN; unused slots stay zero.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(int n) : n_(static_cast<std::uint8_t>(n)) {}

  static ExponentVector unit(int n, GeneratorIndex g, std::int32_t power = 1) {
    ExponentVector e(n);
    e.v_[static_cast<std::size_t>(g.slot(n))] = power;
    return e;
  }

  int n() const { return n_; }
  int size() const { return n_ * n_; }

  std::int32_t operator[](int slot) const { return v_[static_cast<std::size_t>(slot)]; }
  std::int32_t& operator[](int slot) { return v_[static_cast<std::size_t>(slot)]; }
  std::int32_t at(int row, int col) const { return v_[static_cast<std::size_t>((row - 1) * n_ + col - 1)]; }
  std::int32_t& at(int row, int col) { return v_[static_cast<std::size_t>((row - 1) * n_ + col - 1)]; }
  std::int32_t at(GeneratorIndex g) const { return at(g.row, g.col); }

  bool is_zero() const {
    return std::all_of(v_.begin(), v_.begin() + size(), [](std::int32_t x) { return x == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(v_.begin(), v_.begin() + size(), [](std::int32_t x) { return x >= 0; });
  }
  std::int64_t total_degree() const {
    std::int64_t d = 0;
    for (int k = 0; k < size(); ++k) d += v_[static_cast<std::size_t>(k)];
    return d;
  }

  ExponentVector& operator+=(const ExponentVector& o) {
    for (int k = 0; k < size(); ++k) v_[static_cast<std::size_t>(k)] = checked_add(v_[static_cast<std::size_t>(k)], o.v_[static_cast<std::size_t>(k)]);
    return *this;
  }
  ExponentVector& operator-=(const ExponentVector& o) {
    for (int k = 0; k < size(); ++k) v_[static_cast<std::size_t>(k)] = checked_add(v_[static_cast<std::size_t>(k)], -o.v_[static_cast<std::size_t>(k)]);
    return *this;
  }
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
  ExponentVector operator-() const {
    ExponentVector r(n_);
    for (int k = 0; k < size(); ++k) r.v_[static_cast<std::size_t>(k)] = -v_[static_cast<std::size_t>(k)];
    return r;
  }
  ExponentVector scaled(std::int32_t s) const {
    ExponentVector r(n_);
    for (int k = 0; k < size(); ++k) r.v_[static_cast<std::size_t>(k)] = checked_mul(v_[static_cast<std::size_t>(k)], s);
    return r;
  }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) { return a.n_ == b.n_ && a.v_ == b.v_; }
  /// Lexicographic on slots; the canonical term order for storage.
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (int k = 0; k < a.size(); ++k)
      if (a.v_[static_cast<std::size_t>(k)] != b.v_[static_cast<std::size_t>(k)])
        return a.v_[static_cast<std::size_t>(k)] <=> b.v_[static_cast<std::size_t>(k)];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (int k = 0; k < size(); ++k) h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(v_[static_cast<std::size_t>(k)]));
    return h;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int k = 0; k < size(); ++k) {
      if (k) s += ",";
      s += std::to_string(v_[static_cast<std::size_t>(k)]);
    }
    return s + "]";
  }

 private:
  std::uint8_t n_ = 0;
  std::array<std::int32_t, kMaxVars> v_{};
};

struct ExponentHash {
  std::size_t operator()(const ExponentVector& e) const { return e.hash(); }
};

}  // namespace qmat
