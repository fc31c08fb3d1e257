#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qmat/context.hpp"
#include "qmat/error.hpp"
#include "qmat/exponent.hpp"
#include "qmat/qmatrix.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/torus.hpp"
#include "qmat/tower.hpp"

namespace qmat {

/// A derivation given by its values on the n^2 generators, indexed by slot.
template <class Elem>
struct Derivation {
  int n = 2;
  std::vector<Elem> images;

  static Derivation zero(int n) { return {n, std::vector<Elem>(static_cast<std::size_t>(n * n), Elem(n))}; }

  const Elem& operator()(GeneratorIndex g) const { return images[static_cast<std::size_t>(g.slot(n))]; }
  Elem& operator()(GeneratorIndex g) { return images[static_cast<std::size_t>(g.slot(n))]; }

  Derivation& operator+=(const Derivation& o) {
    for (std::size_t s = 0; s < images.size(); ++s) images[s] += o.images[s];
    return *this;
  }
  Derivation& operator-=(const Derivation& o) {
    for (std::size_t s = 0; s < images.size(); ++s) images[s] -= o.images[s];
    return *this;
  }
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  Derivation scaled(const RationalFunction& c) const {
    Derivation r = *this;
    for (auto& e : r.images) e = e.scaled(c);
    return r;
  }

  bool is_zero() const {
    for (const auto& e : images)
      if (!e.is_zero()) return false;
    return true;
  }
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.n == b.n && a.images == b.images; }
};

/// Derivation of O_q(M_n).
using MqDerivation = Derivation<MatrixElement>;
/// Derivation of P(Lambda), given on the T_{i,alpha}.
using TorusDerivation = Derivation<TorusElement>;

/// Derivation of O_q(GL_n): values on the Y_{i,alpha}, written in torus
/// coordinates so that negative powers of det_q are available.
struct GlDerivation : Derivation<TorusElement> {};

template <class Elem>
void check_shape(const Derivation<Elem>& d) {
  check_dimension(d.n);
  if (static_cast<int>(d.images.size()) != d.n * d.n)
    fail(ErrorKind::InvalidSpec, "derivation has " + std::to_string(d.images.size()) + " images, expected " + std::to_string(d.n * d.n));
  for (const auto& e : d.images)
    if (!e.is_zero() && e.n() != d.n) fail(ErrorKind::DimensionMismatch, "image over n=" + std::to_string(e.n()) + " in a derivation over n=" + std::to_string(d.n));
}

// ---------------------------------------------------------------------------
// Leibniz extension

/// D(Y^gamma) with D given on generators, in O_q(M_n).
inline MatrixElement leibniz_monomial(const MqDerivation& d, const ExponentVector& gamma) {
  const int n = d.n;
  MatrixElement out(n);
  for (int s = 0; s < n * n; ++s) {
    for (std::int32_t t = 0; t < gamma[s]; ++t) {
      // prefix * Y_s^t * D(Y_s) * Y_s^{gamma_s - 1 - t} * suffix
      ExponentVector left(n);
      for (int k = 0; k < s; ++k) left[k] = gamma[k];
      left[s] = t;
      ExponentVector right(n);
      right[s] = gamma[s] - 1 - t;
      for (int k = s + 1; k < n * n; ++k) right[k] = gamma[k];
      out += MatrixElement::monomial(left) * d.images[static_cast<std::size_t>(s)] * MatrixElement::monomial(right);
    }
  }
  return out;
}

inline MatrixElement leibniz_extend(const MqDerivation& d, const MatrixElement& x) {
  MatrixElement out(d.n);
  for (const auto& [e, c] : x) out += leibniz_monomial(d, e).scaled(c);
  return out;
}

/// D(T^gamma) on the torus, using D(t^{-1}) = -t^{-1} D(t) t^{-1}.
inline TorusElement leibniz_monomial(const TorusDerivation& d, const ExponentVector& gamma) {
  const int n = d.n;
  TorusElement out(n);
  for (int s = 0; s < n * n; ++s) {
    const std::int32_t m = gamma[s];
    if (m == 0) continue;
    ExponentVector pre(n);
    for (int k = 0; k < s; ++k) pre[k] = gamma[k];
    ExponentVector post(n);
    for (int k = s + 1; k < n * n; ++k) post[k] = gamma[k];
    const TorusElement P = TorusElement::monomial(pre);
    const TorusElement S = TorusElement::monomial(post);
    const TorusElement t = TorusElement::generator(n, GeneratorIndex::from_slot(n, s));
    const auto& dt = d.images[static_cast<std::size_t>(s)];
    TorusElement inner(n);
    if (m > 0) {
      for (std::int32_t k = 0; k < m; ++k) inner += torus_power(t, k) * dt * torus_power(t, m - 1 - k);
    } else {
      const TorusElement ti = torus_invert_monomial(t);
      const TorusElement dti = -(ti * dt * ti);
      for (std::int32_t k = 0; k < -m; ++k) inner += torus_power(ti, k) * dti * torus_power(ti, -m - 1 - k);
    }
    out += P * inner * S;
  }
  return out;
}

inline TorusElement leibniz_extend(const TorusDerivation& d, const TorusElement& x) {
  TorusElement out(d.n);
  for (const auto& [e, c] : x) out += leibniz_monomial(d, e).scaled(c);
  return out;
}

/// D(x) for x in O_q(M_n), with D a derivation of O_q(GL_n); the result lies in the torus.
inline TorusElement leibniz_extend(const GlDerivation& d, const MatrixElement& x) {
  const int n = d.n;
  const Tower& tw = tower(n);
  TorusElement out(n);
  for (const auto& [gamma, c] : x) {
    for (int s = 0; s < n * n; ++s)
      for (std::int32_t t = 0; t < gamma[s]; ++t) {
        ExponentVector left(n);
        for (int k = 0; k < s; ++k) left[k] = gamma[k];
        left[s] = t;
        ExponentVector right(n);
        right[s] = gamma[s] - 1 - t;
        for (int k = s + 1; k < n * n; ++k) right[k] = gamma[k];
        const StepIndex top = top_step(n);
        out += (tw.monomial_image(top, left) * d.images[static_cast<std::size_t>(s)] * tw.monomial_image(top, right)).scaled(c);
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation checks

namespace detail {

/// Runs f(a, b, c, extra) for each pair of generators a < b where the defining
/// relation reads Y_b Y_a = c Y_a Y_b (+ extra correction flag).
template <class F>
void for_each_relation(int n, F&& f) {
  for (int a = 0; a < n * n; ++a)
    for (int b = a + 1; b < n * n; ++b) {
      const GeneratorIndex ga = GeneratorIndex::from_slot(n, a);
      const GeneratorIndex gb = GeneratorIndex::from_slot(n, b);
      const bool skew = ga.row == gb.row || ga.col == gb.col;
      const bool cross = ga.row < gb.row && ga.col < gb.col;
      f(ga, gb, skew ? RationalFunction::q_power(-1) : RationalFunction(1), cross);
    }
}

inline std::string relation_name(GeneratorIndex ga, GeneratorIndex gb) {
  return "Y" + std::to_string(gb.row) + std::to_string(gb.col) + "*Y" + std::to_string(ga.row) + std::to_string(ga.col);
}

}  // namespace detail

/// Leibniz images of both sides of every defining relation of O_q(M_n).
inline CheckList check_derivation(const MqDerivation& d) {
  check_shape(d);
  const int n = d.n;
  CheckList out;
  auto y = [n](GeneratorIndex g) { return MatrixElement::generator(n, g); };
  detail::for_each_relation(n, [&](GeneratorIndex ga, GeneratorIndex gb, const RationalFunction& c, bool cross) {
    MatrixElement lhs = d(gb) * y(ga) + y(gb) * d(ga);
    MatrixElement rhs = (d(ga) * y(gb) + y(ga) * d(gb)).scaled(c);
    if (cross) {
      const GeneratorIndex ib{ga.row, gb.col};
      const GeneratorIndex ja{gb.row, ga.col};
      rhs -= (d(ib) * y(ja) + y(ib) * d(ja)).scaled(q_power_minus(1, -1));
    }
    const bool ok = lhs == rhs;
    out.push_back({detail::relation_name(ga, gb), ok, ok ? "" : "difference " + (lhs - rhs).to_string()});
  });
  return out;
}

/// Same check for a derivation of O_q(GL_n), carried out in the torus.
inline CheckList check_derivation(const GlDerivation& d) {
  check_shape(d);
  const int n = d.n;
  const Tower& tw = tower(n);
  CheckList out;
  auto y = [&](GeneratorIndex g) -> const TorusElement& { return tw.entry(top_step(n), g); };
  detail::for_each_relation(n, [&](GeneratorIndex ga, GeneratorIndex gb, const RationalFunction& c, bool cross) {
    TorusElement lhs = d(gb) * y(ga) + y(gb) * d(ga);
    TorusElement rhs = (d(ga) * y(gb) + y(ga) * d(gb)).scaled(c);
    if (cross) {
      const GeneratorIndex ib{ga.row, gb.col};
      const GeneratorIndex ja{gb.row, ga.col};
      rhs -= (d(ib) * y(ja) + y(ib) * d(ja)).scaled(q_power_minus(1, -1));
    }
    const bool ok = lhs == rhs;
    out.push_back({detail::relation_name(ga, gb), ok, ok ? "" : "difference " + (lhs - rhs).to_string()});
  });
  return out;
}

/// Torus relations T_b T_a = q^{e(b,a)} T_a T_b.
inline CheckList check_derivation(const TorusDerivation& d) {
  check_shape(d);
  const int n = d.n;
  CheckList out;
  for (int a = 0; a < n * n; ++a)
    for (int b = a + 1; b < n * n; ++b) {
      const GeneratorIndex ga = GeneratorIndex::from_slot(n, a);
      const GeneratorIndex gb = GeneratorIndex::from_slot(n, b);
      const TorusElement ta = TorusElement::generator(n, ga);
      const TorusElement tb = TorusElement::generator(n, gb);
      const RationalFunction c = RationalFunction::q_power(commutation_exponent(ExponentVector::unit(n, gb), ExponentVector::unit(n, ga)));
      const TorusElement lhs = d(gb) * ta + tb * d(ga);
      const TorusElement rhs = (d(ga) * tb + ta * d(gb)).scaled(c);
      const bool ok = lhs == rhs;
      out.push_back({"T" + std::to_string(gb.row) + std::to_string(gb.col) + "*T" + std::to_string(ga.row) + std::to_string(ga.col), ok,
                     ok ? "" : "difference " + (lhs - rhs).to_string()});
    }
  return out;
}

template <class D>
void require_derivation(const D& d) {
  for (const auto& e : check_derivation(d))
    if (!e.pass) fail(ErrorKind::NotADerivation, "relation " + e.name + " is not respected: " + e.witness);
}

// ---------------------------------------------------------------------------
// Inner and diagonal derivations

inline MqDerivation ad(const MatrixElement& x, int n) {
  MqDerivation d = MqDerivation::zero(n);
  for (int s = 0; s < n * n; ++s) {
    const MatrixElement g = MatrixElement::generator(n, GeneratorIndex::from_slot(n, s));
    d.images[static_cast<std::size_t>(s)] = x * g - g * x;
  }
  return d;
}

inline TorusDerivation ad(const TorusElement& x, int n) {
  TorusDerivation d = TorusDerivation::zero(n);
  for (int s = 0; s < n * n; ++s) {
    const TorusElement g = TorusElement::generator(n, GeneratorIndex::from_slot(n, s));
    d.images[static_cast<std::size_t>(s)] = x * g - g * x;
  }
  return d;
}

/// ad_x on O_q(GL_n) for x in the torus image of O_q(GL_n).
inline GlDerivation gl_ad(const TorusElement& x, int n) {
  GlDerivation d;
  d.n = n;
  const Tower& tw = tower(n);
  for (const auto& y : tw.top()) d.images.push_back(x * y - y * x);
  return d;
}

/// Y_{i,alpha} -> z_{i,alpha} Y_{i,alpha} with each z in the centre K[det_q].
inline MqDerivation diagonal_derivation(int n, const std::vector<MatrixElement>& z) {
  check_dimension(n);
  if (static_cast<int>(z.size()) != n * n) fail(ErrorKind::InvalidSpec, "diagonal derivation needs n^2 weights");
  MqDerivation d = MqDerivation::zero(n);
  for (int s = 0; s < n * n; ++s)
    d.images[static_cast<std::size_t>(s)] = z[static_cast<std::size_t>(s)] * MatrixElement::generator(n, GeneratorIndex::from_slot(n, s));
  return d;
}

inline MqDerivation diagonal_derivation(int n, const std::vector<RationalFunction>& z) {
  std::vector<MatrixElement> w;
  for (const auto& c : z) w.push_back(MatrixElement::constant(n, c));
  return diagonal_derivation(n, w);
}

/// Weight of Y_{i,alpha} under D_j.
inline int basis_weight(int n, int j, GeneratorIndex g) {
  if (j < 1 || j > 2 * n - 1) fail(ErrorKind::IndexOutOfRange, "D_j index " + std::to_string(j) + " outside [1," + std::to_string(2 * n - 1) + "]");
  if (j < n) return g.col == n + 1 - j ? 1 : 0;
  if (j == n) {
    if (g.row == 1 && g.col == 1) return 1;
    return g.row >= 2 && g.col >= 2 ? -1 : 0;
  }
  return g.row == j - n + 1 ? 1 : 0;
}

inline MqDerivation basis_derivation(int n, int j) {
  check_dimension(n);
  std::vector<RationalFunction> z;
  for (int s = 0; s < n * n; ++s) z.emplace_back(basis_weight(n, j, GeneratorIndex::from_slot(n, s)));
  return diagonal_derivation(n, z);
}

/// z_{i,alpha} + z_{k,delta} = z_{i,delta} + z_{k,alpha} whenever i < k and alpha < delta.
template <class Elem>
bool check_z_condition(int n, const std::vector<Elem>& z) {
  auto at = [&](int i, int a) -> const Elem& { return z[static_cast<std::size_t>((i - 1) * n + a - 1)]; };
  for (int i = 1; i <= n; ++i)
    for (int k = i + 1; k <= n; ++k)
      for (int a = 1; a <= n; ++a)
        for (int dl = a + 1; dl <= n; ++dl)
          if (!(at(i, a) + at(k, dl) == at(i, dl) + at(k, a))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lifting to the torus and decomposing there

/// The unique extension of a derivation of O_q(M_n) (or O_q(GL_n)) to P(Lambda).
///
/// Values on the top-step generators are the embedded images; each step down
/// the tower removes Y_{i,beta} T_{j,beta}^{-1} Y_{j,alpha}, whose derivative
/// follows from Leibniz and D(t^{-1}) = -t^{-1} D(t) t^{-1}.
inline TorusDerivation lift_from_top(int n, std::vector<TorusElement> dv) {
  const Tower& tw = tower(n);
  const auto& steps = tw.steps();
  for (std::size_t k = steps.size() - 1; k-- > 0;) {
    const StepIndex r = steps[k];
    if (r.j < 2 || r.beta < 2) continue;
    const auto& up = tw.generators(steps[k + 1]);
    const std::size_t piv = static_cast<std::size_t>(GeneratorIndex{r.j, r.beta}.slot(n));
    const TorusElement inv = torus_invert_monomial(up[piv]);
    const TorusElement dinv = -(inv * dv[piv] * inv);
    std::vector<TorusElement> next = dv;
    for (int i = 1; i < r.j; ++i)
      for (int a = 1; a < r.beta; ++a) {
        const std::size_t ib = static_cast<std::size_t>(GeneratorIndex{i, r.beta}.slot(n));
        const std::size_t ja = static_cast<std::size_t>(GeneratorIndex{r.j, a}.slot(n));
        const TorusElement& A = up[ib];
        const TorusElement& C = up[ja];
        next[static_cast<std::size_t>(GeneratorIndex{i, a}.slot(n))] -= dv[ib] * inv * C + A * dinv * C + A * inv * dv[ja];
      }
    dv = std::move(next);
  }
  return {n, std::move(dv)};
}

inline TorusDerivation lift_to_torus(const MqDerivation& d) {
  require_derivation(d);
  std::vector<TorusElement> dv;
  for (const auto& img : d.images) dv.push_back(embed(img));
  for (auto& e : dv)
    if (e.is_zero()) e = TorusElement(d.n);
  return lift_from_top(d.n, std::move(dv));
}

inline TorusDerivation lift_to_torus(const GlDerivation& d) {
  require_derivation(d);
  std::vector<TorusElement> dv = d.images;
  for (auto& e : dv)
    if (e.is_zero()) e = TorusElement(d.n);
  return lift_from_top(d.n, std::move(dv));
}

struct TorusDecomposition {
  TorusElement x;
  std::vector<TorusElement> z;  // by slot
};

/// ad_x + theta_z as a derivation of the torus.
inline TorusDerivation recompose(int n, const TorusDecomposition& dec) {
  TorusDerivation d = ad(dec.x, n);
  for (int s = 0; s < n * n; ++s) {
    const TorusElement t = TorusElement::generator(n, GeneratorIndex::from_slot(n, s));
    d.images[static_cast<std::size_t>(s)] += dec.z[static_cast<std::size_t>(s)] * t;
  }
  return d;
}

/// D = ad_x + theta with theta(T_a) = z_a T_a, z_a central, x free of central monomials.
///
/// The coefficient of T^{gamma + e_a} in D(T_a) is x_gamma (q^{e(gamma,e_a)} - q^{e(e_a,gamma)})
/// for non-central gamma and z_{a,gamma} q^{e(gamma,e_a)} for central gamma.
inline TorusDecomposition decompose_torus_derivation(const TorusDerivation& d) {
  check_shape(d);
  const int n = d.n;
  const int N = n * n;
  std::vector<ExponentVector> units;
  for (int s = 0; s < N; ++s) units.push_back(ExponentVector::unit(n, GeneratorIndex::from_slot(n, s)));

  TorusDecomposition out{TorusElement(n), std::vector<TorusElement>(static_cast<std::size_t>(N), TorusElement(n))};
  std::set<ExponentVector> noncentral;
  for (int a = 0; a < N; ++a)
    for (const auto& [e, c] : d.images[static_cast<std::size_t>(a)]) {
      const ExponentVector g = e - units[static_cast<std::size_t>(a)];
      if (is_central_monomial(g))
        out.z[static_cast<std::size_t>(a)].add_term(g, c.times_q_power(-commutation_exponent(g, units[static_cast<std::size_t>(a)])));
      else
        noncentral.insert(g);
    }

  for (const auto& g : noncentral) {
    std::optional<RationalFunction> xg;
    for (int a = 0; a < N; ++a) {
      const auto& u = units[static_cast<std::size_t>(a)];
      const RationalFunction factor = q_power_minus(commutation_exponent(g, u), commutation_exponent(u, g));
      const RationalFunction c = d.images[static_cast<std::size_t>(a)].coeff(g + u);
      if (factor.is_zero()) {
        if (!c.is_zero()) fail(ErrorKind::Inconsistent, "T^" + g.to_string() + " commutes with generator " + GeneratorIndex::from_slot(n, a).to_string() + " yet contributes to its image");
        continue;
      }
      if (!xg) {
        xg = c / factor;
      } else if (!(*xg * factor == c)) {
        fail(ErrorKind::Inconsistent, "coefficient of T^" + g.to_string() + " disagrees between generators");
      }
    }
    if (xg) out.x.add_term(g, *xg);
  }
  return out;
}

// ---------------------------------------------------------------------------
// HH^1 coordinates

/// Polynomial (or Laurent polynomial) in det_q = Delta_n: power -> coefficient.
using DetPoly = std::map<std::int64_t, RationalFunction>;

inline DetPoly det_poly_shift(const DetPoly& p, std::int64_t k) {
  DetPoly r;
  for (const auto& [e, c] : p) r.emplace(e + k, c);
  return r;
}

inline bool is_polynomial(const DetPoly& p) {
  for (const auto& [e, c] : p)
    if (e < 0) return false;
  return true;
}

inline MatrixElement det_poly_to_mq(int n, const DetPoly& p) {
  if (!is_polynomial(p)) fail(ErrorKind::NotPolynomial, "negative power of det_q");
  const MatrixElement det = qdet(n);
  MatrixElement r(n);
  for (const auto& [e, c] : p) r += ypower(det, static_cast<int>(e)).scaled(c);
  return r;
}

inline TorusElement det_poly_to_torus(int n, const DetPoly& p) {
  TorusElement r(n);
  const TorusElement det = delta_element(n, n);
  for (const auto& [e, c] : p) r += torus_power(det, e).scaled(c);
  return r;
}

/// Reads a central torus element as a Laurent polynomial in Delta_n alone.
inline DetPoly central_to_det_poly(const TorusElement& z) {
  DetPoly out;
  const int n = z.n();
  for (const auto& [k, c] : central_to_delta_basis(z)) {
    for (int i = 0; i + 1 < n; ++i)
      if (k[static_cast<std::size_t>(i)] != 0)
        fail(ErrorKind::NotPolynomial, "coefficient involves Delta_" + std::to_string(i + 1) + ", not only det_q");
    out.emplace(k[static_cast<std::size_t>(n - 1)], c);
  }
  return out;
}

struct HH1Coordinates {
  MatrixElement inner;
  std::vector<DetPoly> mu;  // mu_1 .. mu_{2n-1}
};

struct GlCoordinates {
  TorusElement inner;
  std::vector<DetPoly> mu;
  std::int64_t shift = 0;  // power of det_q cleared before reading coordinates
};

namespace detail {

/// mu from the z table: mu_n = z_{1,1}, mu_{n+1-alpha} = z_{1,alpha}, mu_{n+i-1} = z_{i,1};
/// every other z_{i,alpha} must equal mu_{n+1-alpha} + mu_{n+i-1} - mu_n.
inline std::vector<TorusElement> mu_from_z(int n, const std::vector<TorusElement>& z) {
  auto at = [&](int i, int a) -> const TorusElement& { return z[static_cast<std::size_t>((i - 1) * n + a - 1)]; };
  std::vector<TorusElement> mu(static_cast<std::size_t>(2 * n - 1), TorusElement(n));
  auto m = [&](int j) -> TorusElement& { return mu[static_cast<std::size_t>(j - 1)]; };
  m(n) = at(1, 1);
  for (int a = 2; a <= n; ++a) m(n + 1 - a) = at(1, a);
  for (int i = 2; i <= n; ++i) m(n + i - 1) = at(i, 1);
  for (int i = 2; i <= n; ++i)
    for (int a = 2; a <= n; ++a) {
      const TorusElement expected = m(n + 1 - a) + m(n + i - 1) - m(n);
      if (!(expected == at(i, a)))
        fail(ErrorKind::ConditionViolated, "z" + GeneratorIndex{i, a}.to_string() + " is not mu_" + std::to_string(n + 1 - a) + " + mu_" + std::to_string(n + i - 1) + " - mu_" + std::to_string(n));
    }
  return mu;
}

}  // namespace detail

/// sum_j mu_j D_j, mu given as polynomials in det_q.
inline MqDerivation combine_basis(int n, const std::vector<DetPoly>& mu) {
  if (static_cast<int>(mu.size()) != 2 * n - 1) fail(ErrorKind::InvalidSpec, "expected " + std::to_string(2 * n - 1) + " coefficients");
  std::vector<MatrixElement> m;
  for (const auto& p : mu) m.push_back(det_poly_to_mq(n, p));
  std::vector<MatrixElement> z;
  for (int s = 0; s < n * n; ++s) {
    const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
    MatrixElement w(n);
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const int c = basis_weight(n, j, g);
      if (c != 0) w += m[static_cast<std::size_t>(j - 1)].scaled(RationalFunction(c));
    }
    z.push_back(w);
  }
  return diagonal_derivation(n, z);
}

/// The same combination on O_q(GL_n), with Laurent coefficients.
inline GlDerivation combine_basis_gl(int n, const std::vector<DetPoly>& mu) {
  if (static_cast<int>(mu.size()) != 2 * n - 1) fail(ErrorKind::InvalidSpec, "expected " + std::to_string(2 * n - 1) + " coefficients");
  const Tower& tw = tower(n);
  GlDerivation d;
  d.n = n;
  for (int s = 0; s < n * n; ++s) {
    const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
    TorusElement w(n);
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const int c = basis_weight(n, j, g);
      if (c != 0) w += det_poly_to_torus(n, mu[static_cast<std::size_t>(j - 1)]).scaled(RationalFunction(c));
    }
    d.images.push_back(w * tw.top()[static_cast<std::size_t>(s)]);
  }
  return d;
}

struct ExpressOptions {
  std::int32_t padding = 1;
};

/// Coordinates of d in HH^1: d = ad_x + sum mu_j D_j with mu_j in K[det_q] and x in O_q(M_n).
inline HH1Coordinates express_hh1(const MqDerivation& d, const ExpressOptions& opt = {}) {
  const int n = d.n;
  const TorusDerivation lifted = lift_to_torus(d);
  const TorusDecomposition dec = decompose_torus_derivation(lifted);
  const std::vector<TorusElement> mu_t = detail::mu_from_z(n, dec.z);

  HH1Coordinates out;
  for (const auto& m : mu_t) {
    DetPoly p = central_to_det_poly(m);
    if (!is_polynomial(p)) fail(ErrorKind::NotPolynomial, "coefficient " + m.to_string() + " has a negative power of det_q");
    out.mu.push_back(std::move(p));
  }
  out.inner = tower(n).rebase_to_mq(dec.x, opt.padding);

  const MqDerivation residual = d - ad(out.inner, n) - combine_basis(n, out.mu);
  for (int s = 0; s < n * n; ++s)
    if (!residual.images[static_cast<std::size_t>(s)].is_zero())
      fail(ErrorKind::Inconsistent, "residual at " + GeneratorIndex::from_slot(n, s).to_string() + " is " + residual.images[static_cast<std::size_t>(s)].to_string());
  return out;
}

/// Coordinates over O_q(GL_n): clear det_q^k so the images lie in O_q(M_n),
/// express there, then divide back. k < 0 searches k = 0, 1, ... up to max_k.
inline GlCoordinates gl_express(const GlDerivation& d, std::int64_t k = -1, std::int64_t max_k = 8, const ExpressOptions& opt = {}) {
  const int n = d.n;
  require_derivation(d);
  const Tower& tw = tower(n);
  auto cleared = [&](std::int64_t kk) -> std::optional<MqDerivation> {
    const TorusElement dk = torus_power(delta_element(n, n), kk);
    MqDerivation m = MqDerivation::zero(n);
    for (int s = 0; s < n * n; ++s) {
      try {
        m.images[static_cast<std::size_t>(s)] = tw.rebase_to_mq(dk * d.images[static_cast<std::size_t>(s)], opt.padding);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotInSpan) throw;
        return std::nullopt;
      }
    }
    return m;
  };
  std::optional<MqDerivation> m;
  std::int64_t used = k;
  if (k >= 0) {
    m = cleared(k);
    if (!m) fail(ErrorKind::NotInSpan, "det_q^" + std::to_string(k) + " times the images does not lie in O_q(M_n)");
  } else {
    for (used = 0; used <= max_k && !m; ++used) m = cleared(used);
    --used;
    if (!m) fail(ErrorKind::NotInSpan, "no power of det_q up to " + std::to_string(max_k) + " clears the denominators");
  }
  const HH1Coordinates h = express_hh1(*m, opt);
  GlCoordinates out;
  out.shift = used;
  const TorusElement inv = torus_power(delta_element(n, n), -used);
  out.inner = inv * embed(h.inner);
  for (const auto& p : h.mu) out.mu.push_back(det_poly_shift(p, -used));

  const GlDerivation residual{d - gl_ad(out.inner, n) - combine_basis_gl(n, out.mu)};
  if (!residual.is_zero()) fail(ErrorKind::Inconsistent, "nonzero residual after dividing by det_q^" + std::to_string(used));
  return out;
}

// ---------------------------------------------------------------------------
// SL_n

/// D_i + (1/(n-2)) D_n for n >= 3; D_1 - D_3 and D_2 for n = 2.
inline MqDerivation sl_basis_derivation(int n, int i) {
  check_dimension(n);
  if (n == 2) {
    if (i == 1) return basis_derivation(2, 1) - basis_derivation(2, 3);
    if (i == 2) return basis_derivation(2, 2);
    fail(ErrorKind::IndexOutOfRange, "for n = 2 the index must be 1 or 2");
  }
  if (i < 1 || i > 2 * n - 1 || i == n)
    fail(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " must lie in [1," + std::to_string(n - 1) + "] or [" + std::to_string(n + 1) + "," + std::to_string(2 * n - 1) + "]");
  return basis_derivation(n, i) + basis_derivation(n, n).scaled(RationalFunction::from_polys(IntPoly{1}, IntPoly{n - 2}));
}

inline std::vector<int> sl_indices(int n) {
  if (n == 2) return {1, 2};
  std::vector<int> v;
  for (int i = 1; i <= 2 * n - 1; ++i)
    if (i != n) v.push_back(i);
  return v;
}

inline bool annihilates_qdet(const MqDerivation& d) { return leibniz_extend(d, qdet(d.n)).is_zero(); }

/// mu_1 + ... + mu_{n-1} + mu_{n+1} + ... + mu_{2n-1} - (n-2) mu_n = 0.
inline bool mu_sum_constraint(int n, const std::vector<DetPoly>& mu) {
  DetPoly acc;
  auto add = [&](const DetPoly& p, const RationalFunction& s) {
    for (const auto& [e, c] : p) {
      auto [it, ins] = acc.try_emplace(e, c * s);
      if (!ins) it->second += c * s;
    }
  };
  for (int j = 1; j <= 2 * n - 1; ++j) add(mu[static_cast<std::size_t>(j - 1)], j == n ? RationalFunction(-(n - 2)) : RationalFunction(1));
  for (const auto& [e, c] : acc)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace qmat
