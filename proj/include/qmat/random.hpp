#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qmat/derivations.hpp"
#include "qmat/qmatrix.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/torus.hpp"

namespace qmat::rnd {

using Engine = std::mt19937_64;

inline int uniform(Engine& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

/// Small nonzero coefficient: an integer, a signed q-power, or an occasional quotient.
inline RationalFunction coefficient(Engine& g) {
  switch (uniform(g, 0, 3)) {
    case 0: {
      int c = uniform(g, -3, 3);
      return RationalFunction(c == 0 ? 1 : c);
    }
    case 1:
      return RationalFunction::monomial(uniform(g, 0, 1) ? 1 : -1, uniform(g, -2, 2));
    case 2:
      return RationalFunction::from_polys(IntPoly{uniform(g, -2, 2), 1}, IntPoly{1});
    default:
      return RationalFunction::from_polys(IntPoly{1, uniform(g, 1, 2)}, IntPoly{uniform(g, 1, 3), 0, 1});
  }
}

/// Random PBW monomial with total degree at most max_degree.
inline ExponentVector nat_exponent(Engine& g, int n, int max_degree) {
  ExponentVector e(n);
  const int d = uniform(g, 0, max_degree);
  for (int k = 0; k < d; ++k) e[uniform(g, 0, n * n - 1)] += 1;
  return e;
}

/// Exponent vector with entries in [-bound, bound].
inline ExponentVector int_exponent(Engine& g, int n, int bound) {
  ExponentVector e(n);
  for (int s = 0; s < n * n; ++s) e[s] = uniform(g, -bound, bound);
  return e;
}

inline MatrixElement mq_element(Engine& g, int n, int terms, int max_degree) {
  MatrixElement x(n);
  for (int t = 0; t < terms; ++t) x.add_term(nat_exponent(g, n, max_degree), coefficient(g));
  return x;
}

inline TorusElement torus_element(Engine& g, int n, int terms, int bound) {
  TorusElement x(n);
  for (int t = 0; t < terms; ++t) x.add_term(int_exponent(g, n, bound), coefficient(g));
  return x;
}

/// Random torus element with every central monomial removed.
inline TorusElement noncentral_torus_element(Engine& g, int n, int terms, int bound) {
  TorusElement x(n);
  for (int t = 0; t < terms; ++t) {
    const ExponentVector e = int_exponent(g, n, bound);
    if (!is_central_monomial(e)) x.add_term(e, coefficient(g));
  }
  return x;
}

/// Random Laurent polynomial in Delta_1..Delta_n.
inline TorusElement central_element(Engine& g, int n, int terms, int bound) {
  DeltaLaurent p;
  for (int t = 0; t < terms; ++t) {
    DeltaExponent k(static_cast<std::size_t>(n));
    for (auto& v : k) v = uniform(g, -bound, bound);
    p[k] = coefficient(g);
  }
  return delta_laurent_to_torus(n, p);
}

/// Polynomial in det_q with degree at most max_degree (possibly zero).
inline DetPoly det_poly(Engine& g, int max_degree) {
  DetPoly p;
  for (int k = 0; k <= max_degree; ++k)
    if (uniform(g, 0, 2) != 0) p[k] = coefficient(g);
  return p;
}

}  // namespace qmat::rnd
