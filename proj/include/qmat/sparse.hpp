#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>

#include "qmat/error.hpp"
#include "qmat/exponent.hpp"
#include "qmat/rational_function.hpp"

namespace qmat {

/// Term-count ceiling for intermediate results. Products that would exceed it
/// raise ResourceLimit instead of running unbounded. Read-only during
/// computation; set once at start-up (the CLI wires --max-terms and
/// QMAT_MAX_TERMS to it).
class TermLimit {
 public:
  static constexpr std::size_t kDefault = 2'000'000;

  static std::size_t get() { return value().load(std::memory_order_relaxed); }
  static void set(std::size_t v) { value().store(v == 0 ? kDefault : v, std::memory_order_relaxed); }

  static void check(std::size_t terms, const char* where) {
    if (terms > get())
      fail(ErrorKind::ResourceLimit, std::string(where) + " produced " + std::to_string(terms) + " terms (limit " + std::to_string(get()) + ")");
  }

  /// Scoped override, used by tests of the guard path.
  class Scope {
   public:
    explicit Scope(std::size_t v) : saved_(get()) { set(v); }
    ~Scope() { set(saved_); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::size_t saved_;
  };

 private:
  static std::atomic<std::size_t>& value() {
    static std::atomic<std::size_t> v{kDefault};
    return v;
  }
};

/// Finite K-linear combination of PBW monomials, one term per exponent
/// vector, no zero coefficients, ordered lexicographically on exponents.
/// The Tag fixes the algebra (and therefore the multiplication rule).
template <class Tag>
class SparseElement {
 public:
  using Terms = std::map<ExponentVector, RationalFunction>;

  SparseElement() = default;
  explicit SparseElement(int n) : n_(n) {}

  static SparseElement zero(int n) { return SparseElement(n); }
  static SparseElement constant(int n, const RationalFunction& c) {
    SparseElement e(n);
    e.add_term(ExponentVector(n), c);
    return e;
  }
  static SparseElement one(int n) { return constant(n, RationalFunction(1)); }
  static SparseElement monomial(const ExponentVector& exp, const RationalFunction& c = RationalFunction(1)) {
    Tag::validate_exponent(exp);
    SparseElement e(exp.n());
    e.add_term(exp, c);
    return e;
  }
  static SparseElement generator(int n, GeneratorIndex g) {
    check_generator(n, g);
    return monomial(ExponentVector::unit(n, g));
  }

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool is_monomial() const { return terms_.size() == 1; }

  /// Coefficient of a given exponent (zero if absent).
  RationalFunction coeff(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? RationalFunction() : it->second;
  }

  void add_term(const ExponentVector& exp, const RationalFunction& c) {
    if (c.is_zero()) return;
    Tag::validate_exponent(exp);
    auto [it, inserted] = terms_.try_emplace(exp, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparseElement& operator+=(const SparseElement& o) {
    adopt_n(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparseElement& operator-=(const SparseElement& o) {
    adopt_n(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend SparseElement operator+(SparseElement a, const SparseElement& b) { return a += b; }
  friend SparseElement operator-(SparseElement a, const SparseElement& b) { return a -= b; }
  SparseElement operator-() const {
    SparseElement r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  SparseElement scaled(const RationalFunction& s) const {
    SparseElement r(n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  friend bool operator==(const SparseElement& a, const SparseElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Component-wise max of exponents over all terms (zero vector if empty).
  ExponentVector exponent_max() const {
    ExponentVector m(n_);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (int k = 0; k < e.size(); ++k) m[k] = first ? e[k] : std::max(m[k], e[k]);
      first = false;
    }
    return m;
  }
  ExponentVector exponent_min() const {
    ExponentVector m(n_);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (int k = 0; k < e.size(); ++k) m[k] = first ? e[k] : std::min(m[k], e[k]);
      first = false;
    }
    return m;
  }

  /// Plain-text rendering, e.g. "Y11*Y22 + (-q)*Y12*Y21".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (int k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        const GeneratorIndex g = GeneratorIndex::from_slot(n_, k);
        if (!mono.empty()) mono += "*";
        mono += std::string(Tag::symbol) + std::to_string(g.row) + std::to_string(g.col);
        if (e[k] != 1) mono += "^" + std::to_string(e[k]);
      }
      if (mono.empty()) {
        out += "(" + c.to_string() + ")";
      } else if (c.is_one()) {
        out += mono;
      } else {
        out += "(" + c.to_string() + ")*" + mono;
      }
    }
    return out;
  }

 private:
  void adopt_n(const SparseElement& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      n_ = o.n_;
      return;
    }
    if (n_ != o.n_)
      fail(ErrorKind::DimensionMismatch, "elements over n=" + std::to_string(n_) + " and n=" + std::to_string(o.n_));
  }

  int n_ = 0;
  Terms terms_;
};

}  // namespace qmat
