#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmat/context.hpp"
#include "qmat/error.hpp"
#include "qmat/exponent.hpp"
#include "qmat/qmatrix.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/sparse.hpp"
#include "qmat/torus.hpp"

namespace qmat {

/// PBW monomials in the step generators Y^{(r)}_{i,alpha}; exponents may be
/// negative on generators that are invertible at that step.
struct StepTag {
  static constexpr const char* symbol = "Y";
  static void validate_exponent(const ExponentVector&) {}
};
using StepElement = SparseElement<StepTag>;

/// Per-generator exponent bounds, inclusive.
struct ExponentBox {
  std::vector<std::int32_t> lo;
  std::vector<std::int32_t> hi;

  bool contains(const ExponentVector& e) const {
    for (int s = 0; s < e.size(); ++s)
      if (e[s] < lo[static_cast<std::size_t>(s)] || e[s] > hi[static_cast<std::size_t>(s)]) return false;
    return true;
  }
  /// Number of lattice points, saturating at max size_t.
  std::size_t volume() const {
    std::size_t v = 1;
    for (std::size_t s = 0; s < lo.size(); ++s) {
      const auto w = static_cast<std::size_t>(std::max(0, hi[s] - lo[s] + 1));
      if (w != 0 && v > SIZE_MAX / w) return SIZE_MAX;
      v *= w;
    }
    return v;
  }
};

/// Only the nonnegative orthant: the box used for membership in O_q(M_n).
inline ExponentBox natural_box(int n, std::int32_t hi) {
  return {std::vector<std::int32_t>(static_cast<std::size_t>(n * n), 0), std::vector<std::int32_t>(static_cast<std::size_t>(n * n), hi)};
}

/// Result of a relation or identity check.
struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string witness;
};
using CheckList = std::vector<CheckEntry>;

inline bool all_pass(const CheckList& l) {
  return std::all_of(l.begin(), l.end(), [](const CheckEntry& e) { return e.pass; });
}

/// Monomial order used for rebasing: weight sum i*alpha*gamma_{i,alpha}.
/// Every correction term added by the tower has strictly smaller weight than
/// the generator it corrects, so T^gamma leads the image of Y^gamma.
inline std::int64_t rebase_weight(const ExponentVector& e) {
  const int n = e.n();
  std::int64_t w = 0;
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= n; ++a) w += static_cast<std::int64_t>(i) * a * e.at(i, a);
  return w;
}

/// The deleting-derivations tower, materialized in torus coordinates.
class Tower {
 public:
  explicit Tower(int n) : ctx_(build_context(n)) { build(); }

  int n() const { return ctx_.n; }
  const AlgebraContext& context() const { return ctx_; }
  const std::vector<StepIndex>& steps() const { return ctx_.steps; }

  std::size_t position(StepIndex r) const {
    auto it = std::find(ctx_.steps.begin(), ctx_.steps.end(), r);
    if (it == ctx_.steps.end()) fail(ErrorKind::IndexOutOfRange, "step " + r.to_string() + " not in E");
    return static_cast<std::size_t>(it - ctx_.steps.begin());
  }

  /// Y^{(r)}_{i,alpha} as a torus element.
  const TorusElement& entry(StepIndex r, GeneratorIndex g) const {
    check_generator(n(), g);
    return table_[position(r)][static_cast<std::size_t>(g.slot(n()))];
  }
  const std::vector<TorusElement>& generators(StepIndex r) const { return table_[position(r)]; }
  const std::vector<TorusElement>& top() const { return table_.back(); }

  /// Image of the ordered product prod (Y^{(r)}_k)^{gamma_k}.
  TorusElement monomial_image(StepIndex r, const ExponentVector& gamma) const { return monomial_image_at(position(r), gamma); }

  /// The algebra map O_q(M_n) -> P(Lambda) sending Y_{i,alpha} to its top-step image.
  TorusElement embed(const MatrixElement& x) const {
    TorusElement out(n());
    for (const auto& [e, c] : x) out += monomial_image_at(table_.size() - 1, e).scaled(c);
    return out;
  }

  /// Default box: exponent hull of x widened by padding, with negative
  /// exponents kept only on generators whose image at r is invertible.
  ExponentBox default_box(StepIndex r, const TorusElement& x, std::int32_t padding = 1) const {
    const std::size_t pos = position(r);
    const ExponentVector mn = x.exponent_min();
    const ExponentVector mx = x.exponent_max();
    ExponentBox b;
    for (int s = 0; s < n() * n(); ++s) {
      std::int32_t lo = std::min<std::int32_t>(mn[s], 0) - padding;
      if (!table_[pos][static_cast<std::size_t>(s)].is_monomial()) lo = 0;
      b.lo.push_back(std::min<std::int32_t>(lo, 0));
      b.hi.push_back(std::max<std::int32_t>(mx[s], 0) + padding);
    }
    return b;
  }

  /// Express x in the PBW basis of step r within the box.
  ///
  /// Triangular reduction: the heaviest remaining term T^gamma must be the
  /// leading term of the image of Y^gamma, so its coefficient is forced.
  /// Throws NotInSpan when gamma leaves the box or needs an inverse of a
  /// non-invertible generator.
  StepElement rebase(StepIndex r, const TorusElement& x, const ExponentBox& box) const {
    const std::size_t pos = position(r);
    if (static_cast<int>(box.lo.size()) != n() * n() || static_cast<int>(box.hi.size()) != n() * n())
      fail(ErrorKind::DimensionMismatch, "box has the wrong number of entries");
    using Key = std::pair<std::int64_t, ExponentVector>;
    std::map<Key, RationalFunction, std::greater<>> work;
    auto add = [&](const ExponentVector& e, const RationalFunction& c) {
      if (c.is_zero()) return;
      auto [it, inserted] = work.try_emplace(Key{rebase_weight(e), e}, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) work.erase(it);
      }
    };
    for (const auto& [e, c] : x) add(e, c);
    StepElement out(n());
    std::size_t rounds = 0;
    while (!work.empty()) {
      const auto [key, c] = *work.begin();
      const ExponentVector& g = key.second;
      if (!box.contains(g)) fail(ErrorKind::NotInSpan, "leading exponent " + g.to_string() + " lies outside the box");
      for (int s = 0; s < n() * n(); ++s)
        if (g[s] < 0 && !table_[pos][static_cast<std::size_t>(s)].is_monomial())
          fail(ErrorKind::NotInSpan, "leading exponent " + g.to_string() + " needs a non-invertible generator");
      TermLimit::check(++rounds, "rebase");
      out.add_term(g, c);
      const TorusElement img = monomial_image_at(pos, g);
      for (const auto& [e, k] : img) add(e, -(c * k));
    }
    return out;
  }

  StepElement rebase(StepIndex r, const TorusElement& x) const { return rebase(r, x, default_box(r, x)); }

  /// Rebase into O_q(M_n) itself: top step, natural exponents only.
  MatrixElement rebase_to_mq(const TorusElement& x, std::int32_t padding = 1) const {
    const ExponentBox full = default_box(top_step(n()), x, padding);
    ExponentBox b = natural_box(n(), 0);
    b.hi = full.hi;
    const StepElement s = rebase(top_step(n()), x, b);
    MatrixElement m(n());
    for (const auto& [e, c] : s) m.add_term(e, c);
    return m;
  }

  /// Relations of O_q(M_n) among the top-step images, one entry per pair a < b.
  CheckList verify_relations_preserved() const {
    CheckList out;
    const auto& y = top();
    const int N = n() * n();
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b) {
        const GeneratorIndex ga = GeneratorIndex::from_slot(n(), a);
        const GeneratorIndex gb = GeneratorIndex::from_slot(n(), b);
        const TorusElement lhs = y[static_cast<std::size_t>(b)] * y[static_cast<std::size_t>(a)];
        TorusElement rhs = y[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)];
        if (ga.row == gb.row || ga.col == gb.col) {
          rhs = rhs.scaled(RationalFunction::q_power(-1));
        } else if (ga.col < gb.col) {
          const auto& yib = y[static_cast<std::size_t>(GeneratorIndex{ga.row, gb.col}.slot(n()))];
          const auto& yja = y[static_cast<std::size_t>(GeneratorIndex{gb.row, ga.col}.slot(n()))];
          rhs -= (yib * yja).scaled(q_power_minus(1, -1));
        }
        const bool ok = lhs == rhs;
        out.push_back({"Y" + std::to_string(gb.row) + std::to_string(gb.col) + "*Y" + std::to_string(ga.row) + std::to_string(ga.col), ok,
                       ok ? "" : "difference " + (lhs - rhs).to_string()});
      }
    return out;
  }

  /// Factorizations of det_q, b_{n-1}, b_{n+1} through Z = Y^{(2,3)}.
  CheckList verify_step_factorizations() const {
    CheckList out;
    const int n = this->n();
    const StepIndex r{2, 3 <= n ? 3 : n + 1};
    auto z = [&](int i, int a) -> const TorusElement& { return entry(r, {i, a}); };

    TorusElement det = z(1, 1) * z(2, 2) - (z(1, 2) * z(2, 1)).scaled(RationalFunction::q_power(1));
    for (int k = 3; k <= n; ++k) det = det * z(k, k);
    const TorusElement det_img = embed(qdet(n));
    out.push_back({"det_q", det == det_img, det == det_img ? "" : "difference " + (det - det_img).to_string()});

    TorusElement upper = TorusElement::one(n);
    for (int k = 1; k <= n - 1; ++k) upper = upper * z(k, k + 1);
    const TorusElement up_img = embed(b_minor(n, n - 1));
    out.push_back({"b_{n-1}", upper == up_img, upper == up_img ? "" : "difference " + (upper - up_img).to_string()});

    TorusElement lower = TorusElement::one(n);
    for (int k = 2; k <= n; ++k) lower = lower * z(k, k - 1);
    const TorusElement low_img = embed(b_minor(n, n + 1));
    out.push_back({"b_{n+1}", lower == low_img, lower == low_img ? "" : "difference " + (lower - low_img).to_string()});
    return out;
  }

  /// Descending formula applied to each step's successor reproduces the step.
  CheckList verify_recursion_consistency() const {
    CheckList out;
    for (std::size_t k = 0; k + 1 < table_.size(); ++k) {
      const StepIndex r = ctx_.steps[k];
      const auto& up = table_[k + 1];
      std::vector<TorusElement> down = up;
      bool ok = true;
      std::string witness;
      if (r.beta <= n()) {
        const TorusElement& pivot = up[static_cast<std::size_t>(GeneratorIndex{r.j, r.beta}.slot(n()))];
        if (!pivot.is_monomial()) {
          ok = false;
          witness = "pivot is not a monomial";
        } else {
          const TorusElement inv = torus_invert_monomial(pivot);
          for (int i = 1; i < r.j; ++i)
            for (int a = 1; a < r.beta; ++a) {
              const auto& yib = up[static_cast<std::size_t>(GeneratorIndex{i, r.beta}.slot(n()))];
              const auto& yja = up[static_cast<std::size_t>(GeneratorIndex{r.j, a}.slot(n()))];
              auto& target = down[static_cast<std::size_t>(GeneratorIndex{i, a}.slot(n()))];
              target -= yib * inv * yja;
            }
        }
      }
      for (int s = 0; ok && s < n() * n(); ++s)
        if (!(down[static_cast<std::size_t>(s)] == table_[k][static_cast<std::size_t>(s)])) {
          ok = false;
          witness = "generator " + GeneratorIndex::from_slot(n(), s).to_string();
        }
      out.push_back({"step " + r.to_string(), ok, witness});
    }
    return out;
  }

 private:
  void build() {
    const int n = ctx_.n;
    const int N = n * n;
    std::vector<TorusElement> cur;
    for (int s = 0; s < N; ++s) cur.push_back(TorusElement::generator(n, GeneratorIndex::from_slot(n, s)));
    table_.push_back(cur);
    for (std::size_t k = 0; k + 1 < ctx_.steps.size(); ++k) {
      const StepIndex r = ctx_.steps[k];
      std::vector<TorusElement> next = cur;
      if (r.j > 1 && r.beta > 1) {
        const TorusElement& pivot = cur[static_cast<std::size_t>(GeneratorIndex{r.j, r.beta}.slot(n))];
        if (!pivot.is_monomial()) fail(ErrorKind::PivotNotMonomial, "pivot at step " + r.to_string());
        const TorusElement inv = torus_invert_monomial(pivot);
        for (int i = 1; i < r.j; ++i)
          for (int a = 1; a < r.beta; ++a) {
            const auto& yib = cur[static_cast<std::size_t>(GeneratorIndex{i, r.beta}.slot(n))];
            const auto& yja = cur[static_cast<std::size_t>(GeneratorIndex{r.j, a}.slot(n))];
            next[static_cast<std::size_t>(GeneratorIndex{i, a}.slot(n))] += yib * inv * yja;
          }
      }
      cur = std::move(next);
      table_.push_back(cur);
    }
    caches_.resize(table_.size());
    for (auto& c : caches_) c = std::make_unique<Cache>();
  }

  struct Cache {
    std::mutex mu;
    std::unordered_map<ExponentVector, TorusElement, ExponentHash> images;
  };

  TorusElement monomial_image_at(std::size_t pos, const ExponentVector& gamma) const {
    if (gamma.n() != n()) fail(ErrorKind::DimensionMismatch, "exponent over n=" + std::to_string(gamma.n()));
    if (gamma.is_zero()) return TorusElement::one(n());
    Cache& cache = *caches_[pos];
    {
      std::lock_guard<std::mutex> lock(cache.mu);
      if (auto it = cache.images.find(gamma); it != cache.images.end()) return it->second;
    }
    int l = n() * n() - 1;
    while (gamma[l] == 0) --l;
    ExponentVector prefix = gamma;
    const TorusElement& gen = table_[pos][static_cast<std::size_t>(l)];
    TorusElement result;
    if (gamma[l] > 0) {
      prefix[l] -= 1;
      result = monomial_image_at(pos, prefix) * gen;
    } else {
      if (!gen.is_monomial()) fail(ErrorKind::NotAMonomial, "negative power of a non-invertible step generator");
      prefix[l] += 1;
      result = monomial_image_at(pos, prefix) * torus_invert_monomial(gen);
    }
    std::lock_guard<std::mutex> lock(cache.mu);
    return cache.images.emplace(gamma, std::move(result)).first->second;
  }

  AlgebraContext ctx_;
  std::vector<std::vector<TorusElement>> table_;
  std::vector<std::unique_ptr<Cache>> caches_;
};

/// Shared tower for dimension n, built on first use and never modified.
inline const Tower& tower(int n) {
  check_dimension(n);
  static std::array<std::once_flag, kMaxN + 1> flags;
  static std::array<std::unique_ptr<Tower>, kMaxN + 1> towers;
  std::call_once(flags[static_cast<std::size_t>(n)], [n] { towers[static_cast<std::size_t>(n)] = std::make_unique<Tower>(n); });
  return *towers[static_cast<std::size_t>(n)];
}

inline TorusElement embed(const MatrixElement& x) {
  if (x.n() == 0) return TorusElement();
  return tower(x.n()).embed(x);
}

}  // namespace qmat
