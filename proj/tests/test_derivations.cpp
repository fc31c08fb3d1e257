#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmat/qmat.hpp"
#include "qmat/random.hpp"

using namespace qmat;
using oracle::t;
using oracle::y;

namespace {

std::vector<DetPoly> unit(int n, int j) {
  std::vector<DetPoly> mu(static_cast<std::size_t>(2 * n - 1));
  mu[static_cast<std::size_t>(j - 1)][0] = RationalFunction(1);
  return mu;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Derivations, BasisDerivationsRespectRelations) {
  for (int n = 2; n <= 4; ++n)
    for (int j = 1; j <= 2 * n - 1; ++j)
      for (const auto& e : check_derivation(basis_derivation(n, j))) ASSERT_TRUE(e.pass) << "n=" << n << " D_" << j << " " << e.name;
}

TEST(Derivations, BasisWeightsAtN2) {
  // D_1 scales column 2, D_2 scales Y11 by 1 and Y22 by -1, D_3 scales row 2.
  const MqDerivation d1 = basis_derivation(2, 1), d2 = basis_derivation(2, 2), d3 = basis_derivation(2, 3);
  EXPECT_EQ(d1({1, 2}), y(2, 1, 2));
  EXPECT_EQ(d1({2, 2}), y(2, 2, 2));
  EXPECT_TRUE(d1({1, 1}).is_zero());
  EXPECT_EQ(d2({1, 1}), y(2, 1, 1));
  EXPECT_EQ(d2({2, 2}), -y(2, 2, 2));
  EXPECT_TRUE(d2({1, 2}).is_zero());
  EXPECT_EQ(d3({2, 1}), y(2, 2, 1));
  EXPECT_TRUE(d3({1, 2}).is_zero());
  EXPECT_THROW(basis_derivation(2, 4), Error);
}

TEST(Derivations, ZConditionMatchesCheckAtN2) {
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::vector<RationalFunction> z;
    for (int s = 0; s < 4; ++s) z.emplace_back(static_cast<long long>((bits >> s) & 1u));
    ASSERT_EQ(all_pass(check_derivation(diagonal_derivation(2, z))), check_z_condition(2, z)) << bits;
  }
}

TEST(Derivations, NonDerivationIsReported) {
  MqDerivation d = MqDerivation::zero(2);
  d({1, 1}) = y(2, 1, 2);
  const CheckList l = check_derivation(d);
  EXPECT_FALSE(all_pass(l));
  EXPECT_EQ(kind_of([&] { require_derivation(d); }), ErrorKind::NotADerivation);
  EXPECT_EQ(kind_of([&] { express_hh1(d); }), ErrorKind::NotADerivation);
}

TEST(Derivations, LeibnizExtensionOfInnerDerivation) {
  rnd::Engine g(3);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixElement x = rnd::mq_element(g, 3, 2, 2), m = rnd::mq_element(g, 3, 2, 3);
    ASSERT_EQ(leibniz_extend(ad(x, 3), m), x * m - m * x);
  }
}

// Each term of det_q uses one entry per row and column, so D_j(det_q) is
// det_q for j != n and (2 - n) det_q for j = n.
TEST(Derivations, BasisOnDeterminant) {
  for (int n = 2; n <= 4; ++n)
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const RationalFunction want = j == n ? RationalFunction(2 - n) : RationalFunction(1);
      EXPECT_EQ(leibniz_extend(basis_derivation(n, j), qdet(n)), qdet(n).scaled(want)) << n << " " << j;
    }
}

TEST(Derivations, LiftCommutesWithEmbedding) {
  rnd::Engine g(5);
  for (int n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 6; ++trial) {
      const MqDerivation d = ad(rnd::mq_element(g, n, 2, 2), n) + basis_derivation(n, rnd::uniform(g, 1, 2 * n - 1));
      const TorusDerivation lifted = lift_to_torus(d);
      for (const auto& e : check_derivation(lifted)) ASSERT_TRUE(e.pass) << e.name;
      const MatrixElement m = rnd::mq_element(g, n, 2, 2);
      ASSERT_EQ(leibniz_extend(lifted, embed(m)), embed(leibniz_extend(d, m)));
    }
}

TEST(Derivations, DecomposeKnownPair) {
  TorusDecomposition in{t(2, 1, 2), std::vector<TorusElement>(4, TorusElement(2))};
  in.z[0] = delta_element(2, 2);
  const TorusDecomposition out = decompose_torus_derivation(recompose(2, in));
  EXPECT_EQ(out.x, in.x);
  EXPECT_EQ(out.z, in.z);
}

TEST(Derivations, DecomposeRoundTripRandom) {
  rnd::Engine g(9);
  for (int n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      TorusDecomposition in{rnd::noncentral_torus_element(g, n, 3, 1), {}};
      for (int s = 0; s < n * n; ++s) in.z.push_back(rnd::central_element(g, n, 1, 1));
      const TorusDecomposition out = decompose_torus_derivation(recompose(n, in));
      ASSERT_EQ(out.x, in.x);
      ASSERT_EQ(out.z, in.z);
    }
}

TEST(Derivations, DecomposeDetectsInconsistency) {
  TorusDerivation d = TorusDerivation::zero(2);
  d({1, 1}) = t(2, 1, 2);
  EXPECT_EQ(kind_of([&] { decompose_torus_derivation(d); }), ErrorKind::Inconsistent);
}

TEST(Derivations, MuDictionaryRejectsBadTables) {
  std::vector<TorusElement> z(4, TorusElement(2));
  z[3] = TorusElement::one(2);
  EXPECT_EQ(kind_of([&] { detail::mu_from_z(2, z); }), ErrorKind::ConditionViolated);
}

TEST(Derivations, ExpressBasis) {
  for (int n = 2; n <= 3; ++n)
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const HH1Coordinates h = express_hh1(basis_derivation(n, j));
      EXPECT_TRUE(h.inner.is_zero());
      EXPECT_EQ(h.mu, unit(n, j));
    }
}

TEST(Derivations, ExpressInnerY12) {
  const HH1Coordinates h = express_hh1(ad(y(2, 1, 2), 2));
  EXPECT_EQ(h.mu, std::vector<DetPoly>(3));
  EXPECT_EQ(h.inner, y(2, 1, 2));
}

TEST(Derivations, ExpressRandomCombination) {
  rnd::Engine g(13);
  for (int n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      const MatrixElement x = rnd::mq_element(g, n, 2, 2);
      std::vector<DetPoly> mu;
      for (int j = 1; j <= 2 * n - 1; ++j) mu.push_back(rnd::det_poly(g, 1));
      const MqDerivation d = ad(x, n) + combine_basis(n, mu);
      const HH1Coordinates h = express_hh1(d);
      ASSERT_EQ(h.mu, mu);
      ASSERT_TRUE((d - ad(h.inner, n) - combine_basis(n, h.mu)).is_zero());
      // x is determined up to the centre
      ASSERT_EQ(ad(h.inner, n), ad(x, n));
    }
}

TEST(Derivations, DetPolynomials) {
  DetPoly p{{-1, RationalFunction(1)}};
  EXPECT_FALSE(is_polynomial(p));
  EXPECT_EQ(kind_of([&] { det_poly_to_mq(2, p); }), ErrorKind::NotPolynomial);
  EXPECT_EQ(det_poly_to_torus(2, p), torus_invert_monomial(delta_element(2, 2)));
  EXPECT_EQ(central_to_det_poly(det_poly_to_torus(3, {{2, RationalFunction(5)}})), (DetPoly{{2, RationalFunction(5)}}));
  EXPECT_EQ(kind_of([&] { central_to_det_poly(delta_element(3, 1)); }), ErrorKind::NotPolynomial);
  EXPECT_EQ(det_poly_shift(p, 2), (DetPoly{{1, RationalFunction(1)}}));
}

TEST(Derivations, GeneralLinearLaurentCoefficients) {
  for (int n = 2; n <= 3; ++n) {
    std::vector<DetPoly> mu(static_cast<std::size_t>(2 * n - 1));
    mu[0][-1] = RationalFunction(1);
    mu[static_cast<std::size_t>(n - 1)][-2] = RationalFunction::q_power(1);
    const GlCoordinates h = gl_express(combine_basis_gl(n, mu));
    EXPECT_EQ(h.mu, mu);
    EXPECT_TRUE(h.inner.is_zero());
    EXPECT_EQ(h.shift, 2);
  }
  // inner derivation by det_q^{-1} Y12
  const TorusElement x = torus_invert_monomial(delta_element(2, 2)) * t(2, 1, 2);
  const GlCoordinates h = gl_express(gl_ad(x, 2));
  EXPECT_EQ(h.mu, std::vector<DetPoly>(3));
  EXPECT_TRUE((gl_ad(h.inner, 2) - gl_ad(x, 2)).is_zero());
  EXPECT_EQ(kind_of([&] { gl_express(combine_basis_gl(2, {{{-3, RationalFunction(1)}}, {}, {}}), 1); }), ErrorKind::NotInSpan);
}

TEST(Derivations, SpecialLinear) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_EQ(sl_indices(n).size(), static_cast<std::size_t>(2 * n - 2));
    for (int i : sl_indices(n)) {
      EXPECT_TRUE(annihilates_qdet(sl_basis_derivation(n, i))) << n << " " << i;
      EXPECT_TRUE(all_pass(check_derivation(sl_basis_derivation(n, i))));
    }
  }
  for (int n = 2; n <= 3; ++n)
    for (int i : sl_indices(n)) EXPECT_TRUE(mu_sum_constraint(n, express_hh1(sl_basis_derivation(n, i)).mu)) << n << " " << i;
  EXPECT_FALSE(mu_sum_constraint(3, unit(3, 1)));
  EXPECT_THROW(sl_basis_derivation(3, 3), Error);
  EXPECT_THROW(sl_basis_derivation(2, 3), Error);
}
