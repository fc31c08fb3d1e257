#include <gtest/gtest.h>

#include <map>
#include <optional>
#include <thread>

#include "oracles.hpp"
#include "qmat/qmat.hpp"
#include "qmat/random.hpp"

using namespace qmat;
using oracle::t;
using oracle::y;

namespace {

std::vector<ExponentVector> pbw_monomials(int n, int max_degree) {
  std::vector<ExponentVector> out{ExponentVector(n)};
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<ExponentVector> next;
    for (const auto& e : out) {
      if (e.total_degree() != d - 1) continue;
      int last = 0;
      for (int s = 0; s < n * n; ++s)
        if (e[s] > 0) last = s;
      for (int s = last; s < n * n; ++s) {
        ExponentVector f = e;
        f[s] += 1;
        next.push_back(f);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

// Dense Gaussian elimination over K: coordinates of x in the images of the given PBW monomials.
std::optional<MatrixElement> dense_rebase(const Tower& tw, const std::vector<ExponentVector>& basis, const TorusElement& x) {
  const int n = tw.n();
  std::map<ExponentVector, std::size_t> row_of;
  std::vector<TorusElement> cols;
  for (const auto& e : basis) cols.push_back(tw.embed(MatrixElement::monomial(e)));
  auto row = [&](const ExponentVector& e) {
    auto [it, ins] = row_of.try_emplace(e, row_of.size());
    return it->second;
  };
  for (const auto& c : cols)
    for (const auto& [e, k] : c) row(e);
  for (const auto& [e, k] : x) row(e);
  const std::size_t R = row_of.size(), C = cols.size();
  std::vector<std::vector<RationalFunction>> m(R, std::vector<RationalFunction>(C + 1));
  for (std::size_t j = 0; j < C; ++j)
    for (const auto& [e, k] : cols[j]) m[row_of[e]][j] = k;
  for (const auto& [e, k] : x) m[row_of[e]][C] = k;

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t j = 0; j < C && r < R; ++j) {
    std::size_t p = r;
    while (p < R && m[p][j].is_zero()) ++p;
    if (p == R) continue;
    std::swap(m[p], m[r]);
    const RationalFunction inv = m[r][j].inverse();
    for (auto& v : m[r]) v = v * inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m[i][j].is_zero()) continue;
      const RationalFunction f = m[i][j];
      for (std::size_t k = j; k <= C; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < R; ++i)
    if (!m[i][C].is_zero()) return std::nullopt;
  MatrixElement out(n);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) out.add_term(basis[pivot_col[i]], m[i][C]);
  return out;
}

}  // namespace

TEST(Tower, BottomStepIsTheTorus) {
  for (int n = 2; n <= 4; ++n) {
    const Tower& tw = tower(n);
    for (int s = 0; s < n * n; ++s) {
      const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
      EXPECT_EQ(tw.entry({1, 2}, g), TorusElement::generator(n, g));
    }
  }
}

// Classical deleting derivation at n = 2: Y11 = T11 + T12 T22^{-1} T21.
TEST(Tower, EmbedY11AtN2) {
  const Tower& tw = tower(2);
  const TorusElement want = t(2, 1, 1) + t(2, 1, 2) * torus_invert_monomial(t(2, 2, 2)) * t(2, 2, 1);
  EXPECT_EQ(tw.embed(y(2, 1, 1)), want);
  ExponentVector e(2);
  e.at(1, 2) = e.at(2, 1) = 1;
  e.at(2, 2) = -1;
  EXPECT_EQ(want.coeff(e), RationalFunction::q_power(1));
  EXPECT_EQ(tw.embed(y(2, 1, 2)), t(2, 1, 2));
  EXPECT_EQ(tw.embed(y(2, 2, 1)), t(2, 2, 1));
  EXPECT_EQ(tw.embed(y(2, 2, 2)), t(2, 2, 2));
}

TEST(Tower, DeterminantEmbedsAsDeltaN) {
  EXPECT_EQ(embed(qdet(2)), t(2, 1, 1) * t(2, 2, 2));
  for (int n = 2; n <= 4; ++n) EXPECT_EQ(embed(qdet(n)), delta_element(n, n)) << "n=" << n;
}

TEST(Tower, RelationsPreserved) {
  for (int n = 2; n <= 3; ++n) {
    const CheckList l = tower(n).verify_relations_preserved();
    EXPECT_EQ(l.size(), static_cast<std::size_t>(n * n * (n * n - 1) / 2));
    for (const auto& e : l) EXPECT_TRUE(e.pass) << e.name << " " << e.witness;
  }
}

TEST(Tower, RecursionAndFactorizations) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& e : tower(n).verify_recursion_consistency()) EXPECT_TRUE(e.pass) << n << " " << e.name << " " << e.witness;
    for (const auto& e : tower(n).verify_step_factorizations()) EXPECT_TRUE(e.pass) << n << " " << e.name << " " << e.witness;
  }
}

// b_i embeds as the product of T along its wrapped diagonal, coefficient 1.
TEST(Tower, MinorsEmbedAsDiagonalMonomials) {
  for (int n = 2; n <= 3; ++n)
    for (int i = 1; i <= 2 * n - 1; ++i) {
      TorusElement want = TorusElement::one(n);
      const MinorSpec m = b_minor_spec(n, i);
      for (std::size_t k = 0; k < m.rows.size(); ++k) want = want * t(n, m.rows[k], m.cols[k]);
      EXPECT_EQ(embed(b_minor(n, i)), want) << "n=" << n << " i=" << i;
    }
}

TEST(Tower, EmbedIsMultiplicative) {
  rnd::Engine g(77);
  for (int trial = 0; trial < 30; ++trial) {
    const MatrixElement a = rnd::mq_element(g, 3, 2, 2), b = rnd::mq_element(g, 3, 2, 2);
    ASSERT_EQ(embed(a * b), embed(a) * embed(b));
  }
}

TEST(Tower, RebaseT11AtN2) {
  // T11 at the top step of n = 2 is Y11 - q Y12 Y21 Y22^{-1}.
  const Tower& tw = tower(2);
  const StepElement r = tw.rebase(top_step(2), t(2, 1, 1));
  ExponentVector e(2);
  e.at(1, 2) = e.at(2, 1) = 1;
  e.at(2, 2) = -1;
  StepElement want = StepElement::generator(2, {1, 1});
  want.add_term(e, RationalFunction::monomial(-1, 1));
  EXPECT_EQ(r, want);
}

TEST(Tower, RebaseAgreesWithDenseSolve) {
  const Tower& tw = tower(2);
  const auto basis = pbw_monomials(2, 3);
  rnd::Engine g(12);
  for (int trial = 0; trial < 25; ++trial) {
    const MatrixElement a = rnd::mq_element(g, 2, 3, 3);
    const TorusElement x = tw.embed(a);
    const auto dense = dense_rebase(tw, basis, x);
    ASSERT_TRUE(dense.has_value());
    ASSERT_EQ(*dense, a);
    ASSERT_EQ(tw.rebase_to_mq(x), a);
  }
}

TEST(Tower, RebaseRejectsElementsOutsideTheAlgebra) {
  const Tower& tw = tower(2);
  const TorusElement inv = torus_invert_monomial(t(2, 2, 2));
  try {
    tw.rebase_to_mq(inv);
    FAIL() << "expected NotInSpan";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInSpan);
  }
  EXPECT_FALSE(dense_rebase(tw, pbw_monomials(2, 2), inv).has_value());
  // T11 alone is not in O_q(M_2): it needs Y22^{-1}.
  EXPECT_THROW(tw.rebase_to_mq(t(2, 1, 1)), Error);
}

TEST(Tower, FirstColumnStepsRepeat) {
  const Tower& tw = tower(3);
  for (int j = 2; j <= 3; ++j)
    for (int s = 0; s < 9; ++s) {
      const GeneratorIndex g = GeneratorIndex::from_slot(3, s);
      EXPECT_EQ(tw.entry({j, 1}, g), tw.entry({j, 2}, g));
    }
}

TEST(Tower, TowerIsSharedAndThreadSafe) {
  const Tower* first = &tower(3);
  std::vector<std::thread> th;
  std::vector<const Tower*> seen(4);
  for (int k = 0; k < 4; ++k) th.emplace_back([&, k] { seen[static_cast<std::size_t>(k)] = &tower(3); });
  for (auto& x : th) x.join();
  for (const Tower* p : seen) EXPECT_EQ(p, first);
}
