#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmat/error.hpp"

namespace qmat {

/// Largest matrix size supported by the fixed-capacity exponent storage.
inline constexpr int kMaxN = 6;
inline constexpr int kMaxVars = kMaxN * kMaxN;

/// Generator Y_{row,col} (or T_{row,col}); 1-based row and column.
struct GeneratorIndex {
  int row = 1;
  int col = 1;

  /// 1-based lexicographic position (row-1)*n + col.
  int flat(int n) const { return (row - 1) * n + col; }
  /// 0-based storage slot.
  int slot(int n) const { return flat(n) - 1; }

  static GeneratorIndex from_flat(int n, int flat) { return {(flat - 1) / n + 1, (flat - 1) % n + 1}; }
  static GeneratorIndex from_slot(int n, int slot) { return from_flat(n, slot + 1); }

  friend bool operator==(const GeneratorIndex&, const GeneratorIndex&) = default;
  friend auto operator<=>(const GeneratorIndex&, const GeneratorIndex&) = default;

  std::string to_string() const { return "(" + std::to_string(row) + "," + std::to_string(col) + ")"; }
};

inline void check_generator(int n, GeneratorIndex g) {
  if (g.row < 1 || g.row > n || g.col < 1 || g.col > n)
    fail(ErrorKind::IndexOutOfRange, "generator " + g.to_string() + " outside [1," + std::to_string(n) + "]^2");
}

/// A step (j, beta) of the deleting-derivations tower. Steps are compared
/// lexicographically, which is the standard ordering on N^2.
struct StepIndex {
  int j = 1;
  int beta = 2;

  friend bool operator==(const StepIndex&, const StepIndex&) = default;
  friend auto operator<=>(const StepIndex&, const StepIndex&) = default;

  std::string to_string() const { return "(" + std::to_string(j) + "," + std::to_string(beta) + ")"; }
};

/// E = ([1,n]^2 ∪ {(n,n+1)}) \ {(1,1)} in increasing order.
inline std::vector<StepIndex> enumerate_steps(int n) {
  std::vector<StepIndex> e;
  for (int j = 1; j <= n; ++j)
    for (int b = 1; b <= n; ++b)
      if (!(j == 1 && b == 1)) e.push_back({j, b});
  e.push_back({n, n + 1});
  return e;
}

inline bool is_step(int n, StepIndex s) {
  if (s.j == n && s.beta == n + 1) return true;
  if (s.j == 1 && s.beta == 1) return false;
  return s.j >= 1 && s.j <= n && s.beta >= 1 && s.beta <= n;
}

/// Least element of E strictly above s; empty for the top step (n, n+1).
inline std::optional<StepIndex> successor(int n, StepIndex s) {
  if (!is_step(n, s)) fail(ErrorKind::IndexOutOfRange, "step " + s.to_string() + " not in E");
  if (s.j == n && s.beta == n + 1) return std::nullopt;
  if (s.j == n && s.beta == n) return StepIndex{n, n + 1};
  if (s.beta < n) return StepIndex{s.j, s.beta + 1};
  return StepIndex{s.j + 1, 1};
}

inline StepIndex top_step(int n) { return {n, n + 1}; }

/// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<long long> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}

  long long& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  long long operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }

  IntMatrix transposed() const {
    IntMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// Ambient data for O_q(M_n) and its quantum torus.
struct AlgebraContext {
  int n = 2;
  /// Skew-symmetric n^2 x n^2 commutation matrix: T_k T_l = q^{B(k,l)} T_l T_k.
  IntMatrix B;
  std::vector<StepIndex> steps;

  int num_generators() const { return n * n; }
};

/// The n x n matrix with 1 above the diagonal and -1 below.
inline IntMatrix block_a(int n) {
  IntMatrix a(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) a(k, l) = k < l ? 1 : (k > l ? -1 : 0);
  return a;
}

inline void check_dimension(int n) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "n must be at least 2, got " + std::to_string(n));
  if (n > kMaxN)
    fail(ErrorKind::InvalidDimension, "n = " + std::to_string(n) + " exceeds the supported maximum " + std::to_string(kMaxN));
}

/// B = (A I ... I; -I A ... I; ...; -I ... -I A).
inline AlgebraContext build_context(int n) {
  check_dimension(n);
  AlgebraContext ctx;
  ctx.n = n;
  ctx.B = IntMatrix(n * n, n * n);
  const IntMatrix a = block_a(n);
  for (int bi = 0; bi < n; ++bi)
    for (int bj = 0; bj < n; ++bj)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          long long v = 0;
          if (bi == bj)
            v = a(k, l);
          else if (k == l)
            v = bi < bj ? 1 : -1;
          ctx.B(bi * n + k, bj * n + l) = v;
        }
  ctx.steps = enumerate_steps(n);
  return ctx;
}

}  // namespace qmat
