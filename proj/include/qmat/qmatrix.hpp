#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmat/context.hpp"
#include "qmat/error.hpp"
#include "qmat/exponent.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/sparse.hpp"

namespace qmat {

struct MqTag {
  static constexpr const char* symbol = "Y";
  static void validate_exponent(const ExponentVector& e) {
    if (!e.is_nonnegative()) fail(ErrorKind::InvalidSpec, "negative exponent " + e.to_string() + " in O_q(M_n)");
  }
};

/// Element of O_q(M_n) in PBW normal form (generators in lexicographic order).
using MatrixElement = SparseElement<MqTag>;

namespace detail {

/// Straightening of (monomial) * (generator). A monomial whose generators
/// all lie strictly above g interacts with g as a block, and rewriting such a
/// block never produces generators below g or above its own maximum, so
/// results are cached on (block, g) and the part at or below g is simply
/// concatenated on the left.
class Straightener {
 public:
  using Terms = std::map<ExponentVector, RationalFunction>;

  explicit Straightener(int n) : n_(n) {}

  /// m * Y_g, accumulated into out with factor c.
  void mul_mono_gen(const ExponentVector& m, int g, const RationalFunction& c, Terms& out) {
    ExponentVector prefix = m;
    ExponentVector suffix(n_);
    bool any = false;
    for (int s = g + 1; s < n_ * n_; ++s) {
      if (m[s] == 0) continue;
      suffix[s] = m[s];
      prefix[s] = 0;
      any = true;
    }
    if (!any) {
      prefix[g] += 1;
      accumulate(out, prefix, c);
      return;
    }
    for (const auto& [e, k] : block(suffix, g)) accumulate(out, prefix + e, c * k);
  }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct Key {
    ExponentVector suffix;
    int g;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.suffix.hash() * 31u + static_cast<std::size_t>(k.g); }
  };

  static void accumulate(Terms& out, const ExponentVector& e, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  }

  /// suffix * Y_g where every generator of suffix is above g.
  const Terms& block(const ExponentVector& suffix, int g) {
    Key key{suffix, g};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    int l = n_ * n_ - 1;
    while (suffix[l] == 0) --l;
    ExponentVector rest = suffix;
    rest[l] -= 1;

    const GeneratorIndex small = GeneratorIndex::from_slot(n_, g);  // (i, alpha)
    const GeneratorIndex big = GeneratorIndex::from_slot(n_, l);    // (j, beta)
    Terms result;

    // Y_big * Y_small = c * Y_small * Y_big  (+ correction when i<j, alpha<beta).
    RationalFunction c(1);
    if (small.row == big.row || small.col == big.col) c = RationalFunction::q_power(-1);
    {
      Terms head;
      mul_mono_gen(rest, g, c, head);
      // Nothing in head exceeds Y_big, so appending it keeps normal order.
      for (auto& [e, k] : head) {
        ExponentVector f = e;
        f[l] += 1;
        accumulate(result, f, k);
      }
    }
    if (small.row < big.row && small.col < big.col) {
      const int ib = GeneratorIndex{small.row, big.col}.slot(n_);
      const int ja = GeneratorIndex{big.row, small.col}.slot(n_);
      Terms mid;
      mul_mono_gen(rest, ib, -q_power_minus(1, -1), mid);
      for (const auto& [e, k] : mid) mul_mono_gen(e, ja, k, result);
    }
    TermLimit::check(result.size(), "straightening");
    return cache_.emplace(std::move(key), std::move(result)).first->second;
  }

  int n_;
  std::unordered_map<Key, Terms, KeyHash> cache_;
};

/// One cache per thread and dimension; nothing is shared between threads.
inline Straightener& straightener(int n) {
  thread_local std::vector<Straightener> per_n;
  thread_local bool init = false;
  if (!init) {
    for (int k = 0; k <= kMaxN; ++k) per_n.emplace_back(k);
    init = true;
  }
  auto& s = per_n[static_cast<std::size_t>(n)];
  if (s.cache_size() > 200'000) s = Straightener(n);
  return s;
}

}  // namespace detail

/// Product in O_q(M_n), straightened to PBW normal form.
inline MatrixElement ymul(const MatrixElement& x, const MatrixElement& y) {
  if (x.is_zero() || y.is_zero()) return MatrixElement(x.n() ? x.n() : y.n());
  if (x.n() != y.n()) fail(ErrorKind::DimensionMismatch, "product of n=" + std::to_string(x.n()) + " and n=" + std::to_string(y.n()));
  const int n = x.n();
  auto& st = detail::straightener(n);
  detail::Straightener::Terms acc;
  for (const auto& [my, cy] : y) {
    detail::Straightener::Terms cur;
    for (const auto& [mx, cx] : x) cur.emplace(mx, cx * cy);
    for (int s = 0; s < n * n; ++s)
      for (std::int32_t p = 0; p < my[s]; ++p) {
        detail::Straightener::Terms next;
        for (const auto& [e, c] : cur) st.mul_mono_gen(e, s, c, next);
        cur = std::move(next);
        TermLimit::check(cur.size(), "product in O_q(M_n)");
      }
    for (const auto& [e, c] : cur) {
      auto [it, inserted] = acc.try_emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  }
  TermLimit::check(acc.size(), "product in O_q(M_n)");
  MatrixElement r(n);
  for (const auto& [e, c] : acc) r.add_term(e, c);
  return r;
}

inline MatrixElement operator*(const MatrixElement& x, const MatrixElement& y) { return ymul(x, y); }

inline MatrixElement ypower(const MatrixElement& x, int k) {
  MatrixElement r = MatrixElement::one(x.n());
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

/// Number of inversions of a permutation.
inline int inversion_count(const std::vector<int>& p) {
  int c = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++c;
  return c;
}

struct MinorSpec {
  std::vector<int> rows;
  std::vector<int> cols;
};

/// [I | Gamma] = sum over sigma of (-q)^{l(sigma)} Y_{i_1, c_sigma(1)} ... Y_{i_t, c_sigma(t)}.
/// Row indices increase along each product, so every summand is already a PBW monomial.
inline MatrixElement qminor(int n, const MinorSpec& m) {
  check_dimension(n);
  if (m.rows.size() != m.cols.size())
    fail(ErrorKind::InvalidSpec, "minor with " + std::to_string(m.rows.size()) + " rows and " + std::to_string(m.cols.size()) + " columns");
  auto check_subset = [n](const std::vector<int>& v, const char* what) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] < 1 || v[k] > n) fail(ErrorKind::InvalidSpec, std::string(what) + " index " + std::to_string(v[k]) + " outside [1," + std::to_string(n) + "]");
      if (k && v[k] <= v[k - 1]) fail(ErrorKind::InvalidSpec, std::string(what) + " subset must be strictly increasing");
    }
  };
  check_subset(m.rows, "row");
  check_subset(m.cols, "column");
  const std::size_t t = m.rows.size();
  if (t == 0) return MatrixElement::one(n);
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  MatrixElement r(n);
  do {
    ExponentVector e(n);
    for (std::size_t k = 0; k < t; ++k) e.at(m.rows[k], m.cols[static_cast<std::size_t>(p[k])]) += 1;
    const int l = inversion_count(p);
    r.add_term(e, RationalFunction::monomial(l % 2 ? -1 : 1, l));
  } while (std::next_permutation(p.begin(), p.end()));
  return r;
}

inline MatrixElement qdet(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  return qminor(n, {all, all});
}

/// b_0 = b_{2n} = 1; b_i = [1..i | n-i+1..n] for i <= n; [i-n+1..n | 1..2n-i] above.
inline MinorSpec b_minor_spec(int n, int i) {
  check_dimension(n);
  if (i < 0 || i > 2 * n) fail(ErrorKind::IndexOutOfRange, "b_i index " + std::to_string(i) + " outside [0," + std::to_string(2 * n) + "]");
  MinorSpec m;
  if (i == 0 || i == 2 * n) return m;
  if (i <= n) {
    for (int k = 1; k <= i; ++k) {
      m.rows.push_back(k);
      m.cols.push_back(n - i + k);
    }
  } else {
    for (int k = 1; k <= 2 * n - i; ++k) {
      m.rows.push_back(i - n + k);
      m.cols.push_back(k);
    }
  }
  return m;
}

inline MatrixElement b_minor(int n, int i) { return qminor(n, b_minor_spec(n, i)); }

inline bool commutes_with_all_generators(const MatrixElement& x) {
  if (x.is_zero()) return true;
  const int n = x.n();
  for (int s = 0; s < n * n; ++s) {
    const MatrixElement y = MatrixElement::generator(n, GeneratorIndex::from_slot(n, s));
    if (!(x * y == y * x)) return false;
  }
  return true;
}

/// Weight of Y_{i,alpha} under sigma: q^{2(n+1-i-alpha)}.
inline std::int64_t sigma_weight(const ExponentVector& e) {
  const int n = e.n();
  std::int64_t w = 0;
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= n; ++a) w += static_cast<std::int64_t>(e.at(i, a)) * 2 * (n + 1 - i - a);
  return w;
}

template <class Tag>
SparseElement<Tag> sigma_automorphism(const SparseElement<Tag>& x) {
  SparseElement<Tag> r(x.n());
  for (const auto& [e, c] : x) r.add_term(e, c.times_q_power(sigma_weight(e)));
  return r;
}

template <class Tag>
SparseElement<Tag> sigma_inverse(const SparseElement<Tag>& x) {
  SparseElement<Tag> r(x.n());
  for (const auto& [e, c] : x) r.add_term(e, c.times_q_power(-sigma_weight(e)));
  return r;
}

}  // namespace qmat
