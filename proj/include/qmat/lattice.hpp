#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qmat/context.hpp"
#include "qmat/int_poly.hpp"

namespace qmat::lattice {

using Row = std::vector<BigInt>;
using Rows = std::vector<Row>;

inline Rows from_matrix(const IntMatrix& m) {
  Rows r(static_cast<std::size_t>(m.rows), Row(static_cast<std::size_t>(m.cols)));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return r;
}

/// Row-style Hermite normal form H = U * M with U unimodular.
/// H is in reduced echelon form: pivots positive, entries above a pivot in
/// [0, pivot). Zero rows are kept at the bottom so U stays square.
struct Hermite {
  Rows h;
  Rows u;
  std::vector<std::size_t> pivot_cols;  // one per nonzero row of h
};

inline Hermite hermite(const Rows& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  Hermite out{m, Rows(rows, Row(rows)), {}};
  for (std::size_t i = 0; i < rows; ++i) out.u[i][i] = 1;
  auto& h = out.h;
  auto& u = out.u;

  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {  // dst -= f * src
    if (f == 0) return;
    for (std::size_t c = 0; c < cols; ++c) h[dst][c] -= f * h[src][c];
    for (std::size_t c = 0; c < rows; ++c) u[dst][c] -= f * u[src][c];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(h[a], h[b]);
    std::swap(u[a], u[b]);
  };
  auto negate_row = [&](std::size_t a) {
    for (auto& x : h[a]) x = -x;
    for (auto& x : u[a]) x = -x;
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end until a single nonzero remains.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h[i][c] != 0 && (best == rows || abs(h[i][c]) < abs(h[best][c]))) best = i;
      if (best == rows) break;
      swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h[i][c] == 0) continue;
        row_op(i, r, h[i][c] / h[r][c]);
        if (h[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (h[r][c] == 0) continue;
    if (h[r][c] < 0) negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      BigInt f = h[i][c] / h[r][c];
      if (h[i][c] - f * h[r][c] < 0) f -= 1;
      row_op(i, r, f);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

/// Basis of the integer kernel {v : M v = 0}.
inline Rows integer_kernel(const Rows& m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  Rows mt(cols, Row(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) mt[j][i] = m[i][j];
  const Hermite hf = hermite(mt);
  Rows basis;
  for (std::size_t i = hf.pivot_cols.size(); i < cols; ++i) basis.push_back(hf.u[i]);
  return basis;
}

/// Canonical form of the lattice spanned by the rows: nonzero HNF rows.
inline Rows canonical_basis(const Rows& m) {
  Hermite hf = hermite(m);
  hf.h.resize(hf.pivot_cols.size());
  return hf.h;
}

inline bool same_lattice(const Rows& a, const Rows& b) { return canonical_basis(a) == canonical_basis(b); }

inline std::size_t rank(const Rows& m) { return hermite(m).pivot_cols.size(); }

/// Integer coefficients k with sum_i k_i * rows[i] = target, if any exist.
/// The rows are assumed linearly independent, so the answer is unique.
inline std::optional<Row> solve_combination(const Rows& rows, const Row& target) {
  const Hermite hf = hermite(rows);
  const std::size_t r = hf.pivot_cols.size();
  Row y(r);
  Row rest = target;
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t c = hf.pivot_cols[i];
    BigInt qt, rem;
    boost::multiprecision::divide_qr(rest[c], hf.h[i][c], qt, rem);
    if (rem != 0) return std::nullopt;
    y[i] = qt;
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= qt * hf.h[i][k];
  }
  for (const auto& v : rest)
    if (v != 0) return std::nullopt;
  // target = y * H = y * U * M.
  Row k(rows.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) k[j] += y[i] * hf.u[i][j];
  return k;
}

}  // namespace qmat::lattice
