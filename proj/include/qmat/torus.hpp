#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmat/context.hpp"
#include "qmat/error.hpp"
#include "qmat/exponent.hpp"
#include "qmat/lattice.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/sparse.hpp"

namespace qmat {

struct TorusTag {
  static constexpr const char* symbol = "T";
  static void validate_exponent(const ExponentVector&) {}
};

/// Element of the quantum torus P(Lambda), normal-ordered T-monomials.
using TorusElement = SparseElement<TorusTag>;

/// e(gamma, delta) with T^gamma T^delta = q^e T^{gamma+delta}.
///
/// Only pairs in a common row or column fail to commute, and for those the
/// later generator passing the earlier one leftwards picks up q^{-1}.
inline std::int64_t commutation_exponent(const ExponentVector& g, const ExponentVector& d) {
  const int n = g.n();
  std::int64_t acc = 0;
  for (int i = 1; i <= n; ++i) {
    std::int64_t prefix = 0;
    for (int b = 1; b <= n; ++b) {
      acc += static_cast<std::int64_t>(g.at(i, b)) * prefix;
      prefix += d.at(i, b);
    }
  }
  for (int a = 1; a <= n; ++a) {
    std::int64_t prefix = 0;
    for (int j = 1; j <= n; ++j) {
      acc += static_cast<std::int64_t>(g.at(j, a)) * prefix;
      prefix += d.at(j, a);
    }
  }
  return -acc;
}

/// The same exponent computed straight from a commutation matrix B:
/// sum over slots a < b of gamma_b * delta_a * B(b, a).
inline std::int64_t commutation_exponent(const AlgebraContext& ctx, const ExponentVector& g, const ExponentVector& d) {
  std::int64_t acc = 0;
  const int N = ctx.num_generators();
  for (int b = 0; b < N; ++b) {
    if (g[b] == 0) continue;
    for (int a = 0; a < b; ++a) acc += static_cast<std::int64_t>(g[b]) * d[a] * ctx.B(b, a);
  }
  return acc;
}

/// (T^gamma)^m = q^{e(gamma,gamma) m(m-1)/2} T^{m gamma}, valid for every integer m.
inline std::int64_t monomial_power_exponent(const ExponentVector& g, std::int64_t m) {
  return checked_mul(commutation_exponent(g, g), m * (m - 1) / 2);
}

inline TorusElement torus_mul(const TorusElement& x, const TorusElement& y) {
  if (x.is_zero() || y.is_zero()) return TorusElement(x.n() ? x.n() : y.n());
  if (x.n() != y.n()) fail(ErrorKind::DimensionMismatch, "torus product of n=" + std::to_string(x.n()) + " and n=" + std::to_string(y.n()));
  TermLimit::check(x.num_terms() * y.num_terms(), "torus product");
  TorusElement r(x.n());
  for (const auto& [gx, cx] : x)
    for (const auto& [gy, cy] : y) r.add_term(gx + gy, (cx * cy).times_q_power(commutation_exponent(gx, gy)));
  return r;
}

inline TorusElement operator*(const TorusElement& x, const TorusElement& y) { return torus_mul(x, y); }

/// c T^gamma  ->  c^{-1} q^{-e(gamma,-gamma)} T^{-gamma}.
inline TorusElement torus_invert_monomial(const TorusElement& t) {
  if (t.num_terms() != 1) fail(ErrorKind::NotAMonomial, "inverse requested for a " + std::to_string(t.num_terms()) + "-term element");
  const auto& [g, c] = *t.begin();
  const ExponentVector neg = -g;
  return TorusElement::monomial(neg, c.inverse().times_q_power(-commutation_exponent(g, neg)));
}

inline TorusElement torus_power(const TorusElement& x, std::int64_t m) {
  if (x.num_terms() == 1) {
    const auto& [g, c] = *x.begin();
    if (m < 0) return torus_power(torus_invert_monomial(x), -m);
    RationalFunction cm(1);
    for (std::int64_t k = 0; k < m; ++k) cm *= c;
    return TorusElement::monomial(g.scaled(static_cast<std::int32_t>(m)), cm.times_q_power(monomial_power_exponent(g, m)));
  }
  if (m < 0) fail(ErrorKind::NotAMonomial, "negative power of a non-monomial");
  TorusElement r = TorusElement::one(x.n());
  for (std::int64_t k = 0; k < m; ++k) r = r * x;
  return r;
}

/// Component (B gamma)_(i,alpha); T^gamma is central iff all components vanish.
inline std::int64_t centrality_defect(const ExponentVector& g, int i, int a) {
  const int n = g.n();
  std::int64_t s = 0;
  for (int b = 1; b <= n; ++b) {
    if (b > a) s += g.at(i, b);
    if (b < a) s -= g.at(i, b);
  }
  for (int j = 1; j <= n; ++j) {
    if (j > i) s += g.at(j, a);
    if (j < i) s -= g.at(j, a);
  }
  return s;
}

inline bool is_central_monomial(const ExponentVector& g) {
  const int n = g.n();
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= n; ++a)
      if (centrality_defect(g, i, a) != 0) return false;
  return true;
}

/// A torus element is central iff each of its monomials is.
inline bool is_central(const TorusElement& x) {
  for (const auto& [g, c] : x)
    if (!is_central_monomial(g)) return false;
  return true;
}

inline bool torus_commutes_with_all_generators(const TorusElement& x) {
  const int n = x.n();
  if (x.is_zero()) return true;
  for (int s = 0; s < n * n; ++s) {
    const TorusElement t = TorusElement::generator(n, GeneratorIndex::from_slot(n, s));
    if (!(x * t == t * x)) return false;
  }
  return true;
}

/// Exponent vector of Delta_i = T_{1,n-i+1} ... T_{i,n} T_{i+1,1}^{-1} ... T_{n,n-i}^{-1}.
inline ExponentVector delta_exponents(int n, int i) {
  check_dimension(n);
  if (i < 1 || i > n) fail(ErrorKind::IndexOutOfRange, "Delta index " + std::to_string(i) + " outside [1," + std::to_string(n) + "]");
  ExponentVector e(n);
  for (int k = 1; k <= i; ++k) e.at(k, n - i + k) += 1;
  for (int k = 1; k <= n - i; ++k) e.at(i + k, k) -= 1;
  return e;
}

/// Delta_i as a torus element. The factors of the defining product are already
/// in normal order, so the coefficient is exactly 1.
inline TorusElement delta_element(int n, int i) { return TorusElement::monomial(delta_exponents(n, i)); }

using DeltaExponent = std::vector<std::int64_t>;
/// Laurent polynomial in Delta_1..Delta_n with coefficients in K.
using DeltaLaurent = std::map<DeltaExponent, RationalFunction>;

/// Delta_1^{k_1} ... Delta_n^{k_n} as a (single-monomial) torus element.
inline TorusElement delta_power(int n, const DeltaExponent& k) {
  if (static_cast<int>(k.size()) != n) fail(ErrorKind::DimensionMismatch, "Delta exponent of length " + std::to_string(k.size()));
  TorusElement r = TorusElement::one(n);
  for (int i = 1; i <= n; ++i) {
    const std::int64_t ki = k[static_cast<std::size_t>(i - 1)];
    if (ki != 0) r = r * torus_power(delta_element(n, i), ki);
  }
  return r;
}

inline lattice::Rows delta_lattice_rows(int n) {
  lattice::Rows rows;
  for (int i = 1; i <= n; ++i) {
    const ExponentVector d = delta_exponents(n, i);
    lattice::Row row(static_cast<std::size_t>(n * n));
    for (int s = 0; s < n * n; ++s) row[static_cast<std::size_t>(s)] = d[s];
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Integer k with gamma = sum k_i * delta_exponents(i), if one exists.
inline std::optional<DeltaExponent> delta_coordinates(const ExponentVector& g) {
  const int n = g.n();
  lattice::Row target(static_cast<std::size_t>(n * n));
  for (int s = 0; s < n * n; ++s) target[static_cast<std::size_t>(s)] = g[s];
  const auto sol = lattice::solve_combination(delta_lattice_rows(n), target);
  if (!sol) return std::nullopt;
  DeltaExponent k;
  for (const auto& v : *sol) k.push_back(static_cast<std::int64_t>(v));
  return k;
}

/// Rewrite a central element as a Laurent polynomial in the Delta_i, with
/// coefficients adjusted so that sum c_k * delta_power(k) reproduces x exactly.
inline DeltaLaurent central_to_delta_basis(const TorusElement& x) {
  DeltaLaurent out;
  for (const auto& [g, c] : x) {
    if (!is_central_monomial(g)) fail(ErrorKind::NotCentral, "monomial " + g.to_string() + " is not central");
    const auto k = delta_coordinates(g);
    if (!k) fail(ErrorKind::NotInLattice, "central exponent " + g.to_string() + " is not an integer combination of the Delta_i");
    const TorusElement basis = delta_power(x.n(), *k);
    out.emplace(*k, c / basis.begin()->second);
  }
  return out;
}

inline TorusElement delta_laurent_to_torus(int n, const DeltaLaurent& p) {
  TorusElement r(n);
  for (const auto& [k, c] : p) r += delta_power(n, k).scaled(c);
  return r;
}

/// Per-generator sign constraint describing a T-monomial subalgebra.
struct SubalgebraPattern {
  std::string name;
  int n = 2;
  std::vector<bool> integer_allowed;  // by slot

  bool allows(const ExponentVector& g) const {
    for (int s = 0; s < n * n; ++s)
      if (g[s] < 0 && !integer_allowed[static_cast<std::size_t>(s)]) return false;
    return true;
  }
};

namespace patterns {

template <class Pred>
SubalgebraPattern make(std::string name, int n, Pred pred) {
  SubalgebraPattern p{std::move(name), n, std::vector<bool>(static_cast<std::size_t>(n * n))};
  for (int s = 0; s < n * n; ++s) {
    const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
    p.integer_allowed[static_cast<std::size_t>(s)] = pred(g);
  }
  return p;
}

/// Quantum affine space R-bar: every exponent in N.
inline SubalgebraPattern affine(int n) {
  return make("Rbar", n, [](GeneratorIndex) { return false; });
}
/// P(Lambda): every exponent in Z.
inline SubalgebraPattern torus(int n) {
  return make("P", n, [](GeneratorIndex) { return true; });
}
/// U_(2,2): T_{i,alpha} invertible exactly when i > 1 and alpha > 1.
inline SubalgebraPattern u22(int n) {
  return make("U(2,2)", n, [](GeneratorIndex g) { return g.row > 1 && g.col > 1; });
}
/// U_(j,beta) in Y^(j,beta) coordinates: invertible for (i,alpha) >= (j,beta), i > 1, alpha > 1.
inline SubalgebraPattern u(int n, StepIndex s) {
  return make("U" + s.to_string(), n, [s](GeneratorIndex g) {
    return g.row > 1 && g.col > 1 && std::pair(g.row, g.col) >= std::pair(s.j, s.beta);
  });
}
/// V_(j,beta) (j = 1 or beta = 1, plus V_(1,0) = P): N exactly for the
/// first-row/first-column generators at or before (j,beta).
inline SubalgebraPattern v(int n, StepIndex s) {
  if (!(s.j == 1 || s.beta == 1) && !(s.j == 1 && s.beta == 0))
    fail(ErrorKind::InvalidSpec, "V" + s.to_string() + " needs j = 1 or beta = 1");
  return make("V" + s.to_string(), n, [s](GeneratorIndex g) {
    const bool border = g.row == 1 || g.col == 1;
    return !(border && std::pair(g.row, g.col) <= std::pair(s.j, s.beta));
  });
}

}  // namespace patterns

inline bool in_subalgebra(const TorusElement& x, const SubalgebraPattern& p) {
  for (const auto& [g, c] : x)
    if (!p.allows(g)) return false;
  return true;
}

/// Membership in the set Z: the diagonal is constant, and each wrapped
/// diagonal gamma_{1,b} = gamma_{2,b+1} = ... = -gamma_{n-b+2,1} = ... = -gamma_{n,b-1}.
inline bool zset_conditions(const ExponentVector& g) {
  const int n = g.n();
  for (int k = 2; k <= n; ++k)
    if (g.at(k, k) != g.at(1, 1)) return false;
  for (int b = 1; b <= n; ++b) {
    const std::int32_t v = g.at(1, b);
    for (int k = 1; k <= n - b + 1; ++k)
      if (g.at(k, b + k - 1) != v) return false;
    for (int k = 1; k <= b - 1; ++k)
      if (g.at(n - b + 1 + k, k) != -v) return false;
  }
  return true;
}

/// ker B over Z, as rows.
inline lattice::Rows commutation_kernel(const AlgebraContext& ctx) { return lattice::integer_kernel(lattice::from_matrix(ctx.B)); }

}  // namespace qmat
