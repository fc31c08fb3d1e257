#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qmat/qmat.hpp"

using namespace qmat;
using oracle::Rational;

namespace {

RationalFunction rf(IntPoly num, IntPoly den = IntPoly{1}) { return RationalFunction::from_polys(std::move(num), std::move(den)); }

RationalFunction random_rf(std::mt19937_64& g) {
  std::uniform_int_distribution<int> c(-4, 4), d(0, 3), s(-2, 2);
  auto poly = [&] {
    std::vector<BigInt> v;
    for (int k = 0, deg = d(g); k <= deg; ++k) v.emplace_back(c(g));
    return IntPoly(v);
  };
  IntPoly den = poly();
  while (den.is_zero()) den = poly();
  return rf(poly(), den).times_q_power(s(g));
}

}  // namespace

TEST(IntPoly, ArithmeticAndGcd) {
  const IntPoly a{1, 2, 1};  // (1+q)^2
  const IntPoly b{-1, 0, 1};  // (q-1)(q+1)
  EXPECT_EQ(a * b, (IntPoly{-1, -2, 0, 2, 1}));
  EXPECT_EQ(IntPoly::gcd(a, b).normalized_sign(), (IntPoly{1, 1}));
  EXPECT_EQ(IntPoly::divide_exact(a * b, b), a);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.degree(), 2);
}

TEST(RationalFunction, CanonicalForm) {
  // (q^2 - 1)/(q - 1) reduces to q + 1
  EXPECT_EQ(rf({-1, 0, 1}, {-1, 1}), rf({1, 1}));
  // sign lives in the numerator
  EXPECT_EQ(rf({1}, {0, -1}), RationalFunction::monomial(-1, -1));
  EXPECT_EQ(RationalFunction::q_power(3) * RationalFunction::q_power(-3), RationalFunction(1));
  EXPECT_TRUE(RationalFunction::monomial(5, 2).is_monomial());
  EXPECT_TRUE(rf({1, 1}).is_laurent());
  EXPECT_FALSE(rf({1}, {1, 1}).is_laurent());
  EXPECT_EQ(q_power_minus(1, -1), rf({-1, 0, 1}, {0, 1}));
  EXPECT_TRUE(q_power_minus(2, 2).is_zero());
}

TEST(RationalFunction, DivisionByZeroThrows) {
  EXPECT_THROW(RationalFunction(0).inverse(), Error);
  EXPECT_THROW(rf({1}, IntPoly{}), Error);
}

// Field axioms checked against evaluation at rational points.
TEST(RationalFunction, AgreesWithEvaluation) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 300; ++trial) {
    const RationalFunction a = random_rf(g), b = random_rf(g);
    for (const Rational& x : oracle::sample_points()) {
      if (oracle::eval(a.denominator(), x) == 0 || oracle::eval(b.denominator(), x) == 0) continue;
      const Rational va = oracle::eval(a, x), vb = oracle::eval(b, x);
      ASSERT_EQ(oracle::eval(a + b, x), va + vb);
      ASSERT_EQ(oracle::eval(a - b, x), va - vb);
      ASSERT_EQ(oracle::eval(a * b, x), va * vb);
      if (!b.is_zero() && vb != 0) {
        ASSERT_EQ(oracle::eval(a / b, x), va / vb);
      }
    }
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * (b + a), a * b + a * a);
  }
}

TEST(RationalFunction, CanonicalFormIsUnique) {
  std::mt19937_64 g(8);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalFunction a = random_rf(g), b = random_rf(g);
    if (b.is_zero()) continue;
    ASSERT_EQ((a * b) / b, a);
    ASSERT_EQ((a + b) - b, a);
  }
}

TEST(Context, StepEnumeration) {
  const auto steps = enumerate_steps(3);
  ASSERT_FALSE(steps.empty());
  EXPECT_EQ(steps.front(), (StepIndex{1, 2}));
  EXPECT_EQ(steps.back(), top_step(3));
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) EXPECT_EQ(*successor(3, steps[k]), steps[k + 1]);
  EXPECT_FALSE(successor(3, top_step(3)).has_value());
}

TEST(Context, DimensionGuard) {
  EXPECT_THROW(build_context(1), Error);
  EXPECT_THROW(build_context(kMaxN + 1), Error);
  EXPECT_NO_THROW(build_context(2));
}

// B read off directly from the torus relations: T_b T_a = q^{-1} T_a T_b for a < b
// sharing a row or column, and commuting otherwise.
TEST(Context, BMatrixMatchesRelations) {
  for (int n = 2; n <= 4; ++n) {
    const AlgebraContext ctx = build_context(n);
    for (int a = 0; a < n * n; ++a)
      for (int b = 0; b < n * n; ++b) {
        const GeneratorIndex ga = GeneratorIndex::from_slot(n, a), gb = GeneratorIndex::from_slot(n, b);
        long long want = 0;
        if (a != b && (ga.row == gb.row || ga.col == gb.col)) want = b > a ? -1 : 1;
        ASSERT_EQ(ctx.B(b, a), want) << "n=" << n << " " << gb.to_string() << "," << ga.to_string();
      }
  }
}

TEST(Lattice, HermiteIsUnimodularTransform) {
  std::mt19937_64 g(3);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    lattice::Rows m(4, lattice::Row(5));
    for (auto& r : m)
      for (auto& v : r) v = c(g);
    const auto h = lattice::hermite(m);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        BigInt s = 0;
        for (std::size_t k = 0; k < m.size(); ++k) s += h.u[i][k] * m[k][j];
        ASSERT_EQ(s, h.h[i][j]);
      }
    for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) ASSERT_GT(h.h[i][h.pivot_cols[i]], 0);
  }
}

TEST(Lattice, KernelAnnihilatesAndHasFullRank) {
  std::mt19937_64 g(4);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    lattice::Rows m(3, lattice::Row(6));
    for (auto& r : m)
      for (auto& v : r) v = c(g);
    m[2] = m[0];  // force a dependency
    for (std::size_t j = 0; j < 6; ++j) m[2][j] += 2 * m[1][j];
    const auto ker = lattice::integer_kernel(m);
    ASSERT_EQ(ker.size() + lattice::rank(m), 6u);
    for (const auto& k : ker)
      for (const auto& r : m) {
        BigInt s = 0;
        for (std::size_t j = 0; j < 6; ++j) s += r[j] * k[j];
        ASSERT_EQ(s, 0);
      }
  }
}

TEST(Lattice, SameLatticeAndSolve) {
  const lattice::Rows a{{1, 0, 2}, {0, 1, 1}};
  const lattice::Rows b{{1, 1, 3}, {1, 0, 2}};
  const lattice::Rows c{{2, 0, 4}, {0, 1, 1}};
  EXPECT_TRUE(lattice::same_lattice(a, b));
  EXPECT_FALSE(lattice::same_lattice(a, c));
  const auto sol = lattice::solve_combination(a, {3, -2, 4});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ((*sol)[0], 3);
  EXPECT_EQ((*sol)[1], -2);
  EXPECT_FALSE(lattice::solve_combination(c, {1, 0, 2}).has_value());
}

TEST(Sparse, TermLimitGuard) {
  const TermLimit::Scope scope(3);
  MatrixElement x(2);
  for (int k = 0; k < 3; ++k) x.add_term(ExponentVector::unit(2, {1, 1}, k), RationalFunction(1));
  EXPECT_THROW(x * x, Error);
}

TEST(Sparse, CancellationRemovesTerms) {
  const MatrixElement a = oracle::y(2, 1, 2);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a + a).coeff(ExponentVector::unit(2, {1, 2})), RationalFunction(2));
  EXPECT_THROW(MatrixElement::monomial(ExponentVector::unit(2, {1, 1}, -1)), Error);
}
