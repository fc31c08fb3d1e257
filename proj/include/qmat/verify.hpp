#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmat/derivations.hpp"
#include "qmat/lattice.hpp"
#include "qmat/qmatrix.hpp"
#include "qmat/random.hpp"
#include "qmat/torus.hpp"
#include "qmat/tower.hpp"

namespace qmat::verify {

struct CheckResult {
  std::string id;
  std::string statement;
  bool pass = false;
  std::string witness;
  double seconds = 0;
};

struct VerificationReport {
  int n = 2;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct SuiteOptions {
  int max_n = 4;
  std::uint64_t seed = 20240601;
};

struct Outcome {
  bool pass = true;
  std::string witness;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      witness = what;
    }
  }
};

namespace detail {

/// Enumerates every exponent vector with slot s in [lo[s], hi[s]].
template <class F>
void for_each_in_box(int n, const std::vector<int>& lo, const std::vector<int>& hi, F&& f) {
  ExponentVector e(n);
  for (int s = 0; s < n * n; ++s) e[s] = lo[static_cast<std::size_t>(s)];
  while (true) {
    if (!f(e)) return;
    int s = n * n - 1;
    while (s >= 0 && e[s] == hi[static_cast<std::size_t>(s)]) {
      e[s] = lo[static_cast<std::size_t>(s)];
      --s;
    }
    if (s < 0) return;
    e[s] += 1;
  }
}

inline std::vector<int> fill(int n, int v) { return std::vector<int>(static_cast<std::size_t>(n * n), v); }

/// Exponent of the T-monomial attached to b_i: a wrapped diagonal starting at (1, n-i+1) or (i-n+1, 1).
inline ExponentVector b_monomial(int n, int i) {
  ExponentVector e(n);
  if (i <= n)
    for (int k = 1; k <= i; ++k) e.at(k, n - i + k) = 1;
  else
    for (int k = 1; k <= 2 * n - i; ++k) e.at(i - n + k, k) = 1;
  return e;
}

inline std::string poly_string(const DetPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : p) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")*det^" + std::to_string(k);
  }
  return s;
}

inline std::vector<DetPoly> unit_mu(int n, int j) {
  std::vector<DetPoly> mu(static_cast<std::size_t>(2 * n - 1));
  mu[static_cast<std::size_t>(j - 1)][0] = RationalFunction(1);
  return mu;
}

}  // namespace detail

/// Every check of the suite at dimension n, in a fixed order.
inline VerificationReport run_suite(int n, const SuiteOptions& opt = {}) {
  check_dimension(n);
  if (n > opt.max_n)
    fail(ErrorKind::ResourceLimit, "the verification suite is capped at n = " + std::to_string(opt.max_n) + "; n = " + std::to_string(n) + " was requested");
  VerificationReport rep;
  rep.n = n;
  const AlgebraContext ctx = build_context(n);
  const Tower& tw = tower(n);
  const int N = n * n;
  const bool small = n <= 3;
  using detail::fill;

  auto run = [&](const std::string& id, const std::string& statement, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r{id, statement, false, "", 0};
    try {
      const Outcome o = body();
      r.pass = o.pass;
      r.witness = o.witness;
    } catch (const std::exception& e) {
      r.pass = false;
      r.witness = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(r));
  };
  auto seeded = [&](std::uint64_t salt) { return rnd::Engine(opt.seed * 1000003u + salt * 7919u + static_cast<std::uint64_t>(n)); };

  // --- commutation matrix and centre of the torus ---------------------------

  run("context.b_matrix", "B is skew-symmetric with blocks A on the diagonal, I above and -I below", [&] {
    Outcome o;
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) o.require(ctx.B(k, l) == -ctx.B(l, k), "B + B^T != 0");
    const IntMatrix a = block_a(n);
    for (int bi = 0; bi < n; ++bi)
      for (int bj = 0; bj < n; ++bj)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const long long want = bi == bj ? a(k, l) : (k == l ? (bi < bj ? 1 : -1) : 0);
            o.require(ctx.B(bi * n + k, bj * n + l) == want, "block entry mismatch");
          }
    return o;
  });

  run("context.kernel_rank", "the integer kernel of B has rank n", [&] {
    Outcome o;
    const auto ker = commutation_kernel(ctx);
    o.require(lattice::rank(ker) == static_cast<std::size_t>(n), "kernel rank " + std::to_string(lattice::rank(ker)));
    return o;
  });

  run("centre.lattice", "ker B equals the Z-span of the Delta_i exponent vectors", [&] {
    Outcome o;
    o.require(lattice::same_lattice(commutation_kernel(ctx), delta_lattice_rows(n)), "lattices differ");
    return o;
  });

  run("centre.delta_central", "each Delta_i commutes with every T_{i,alpha}", [&] {
    Outcome o;
    for (int i = 1; i <= n; ++i) {
      o.require(is_central_monomial(delta_exponents(n, i)), "B * delta_" + std::to_string(i) + " != 0");
      o.require(torus_commutes_with_all_generators(delta_element(n, i)), "Delta_" + std::to_string(i) + " fails to commute");
      o.require(zset_conditions(delta_exponents(n, i)), "Delta_" + std::to_string(i) + " violates the chain conditions");
    }
    return o;
  });

  run("centre.zset", "chain conditions on gamma hold iff B gamma = 0", [&] {
    Outcome o;
    auto test = [&](const ExponentVector& e) {
      if (zset_conditions(e) != is_central_monomial(e)) {
        o.require(false, "disagreement at " + e.to_string());
        return false;
      }
      return true;
    };
    if (small) {
      detail::for_each_in_box(n, fill(n, -2), fill(n, 2), test);
    } else {
      auto g = seeded(1);
      for (int k = 0; k < 200000 && o.pass; ++k) test(rnd::int_exponent(g, n, 2));
      std::vector<std::int64_t> k(static_cast<std::size_t>(n), -2);
      while (o.pass) {
        ExponentVector e(n);
        for (int i = 1; i <= n; ++i) e += delta_exponents(n, i).scaled(static_cast<std::int32_t>(k[static_cast<std::size_t>(i - 1)]));
        test(e);
        std::size_t p = 0;
        while (p < k.size() && k[p] == 2) k[p++] = -2;
        if (p == k.size()) break;
        ++k[p];
      }
    }
    return o;
  });

  run("centre.brute_force", "B gamma = 0 iff T^gamma commutes with all generators", [&] {
    Outcome o;
    std::vector<TorusElement> gens;
    for (int s = 0; s < N; ++s) gens.push_back(TorusElement::generator(n, GeneratorIndex::from_slot(n, s)));
    auto test = [&](const ExponentVector& e) {
      const TorusElement t = TorusElement::monomial(e);
      bool commutes = true;
      for (const auto& g : gens) commutes = commutes && (t * g == g * t);
      if (commutes != is_central_monomial(e)) {
        o.require(false, "disagreement at " + e.to_string());
        return false;
      }
      return true;
    };
    if (small) {
      detail::for_each_in_box(n, fill(n, -1), fill(n, 1), test);
    } else {
      auto g = seeded(2);
      for (int k = 0; k < 3000 && o.pass; ++k) test(rnd::int_exponent(g, n, 1));
      for (int i = 1; i <= n && o.pass; ++i) test(delta_exponents(n, i));
    }
    return o;
  });

  run("centre.u22", "central monomials in the U_(2,2) sign pattern are nonnegative powers of Delta_n", [&] {
    Outcome o;
    const int bound = n == 2 ? 3 : (n == 3 ? 3 : 1);
    const SubalgebraPattern pat = patterns::u22(n);
    std::vector<int> lo(static_cast<std::size_t>(N)), hi(static_cast<std::size_t>(N), bound);
    for (int s = 0; s < N; ++s) lo[static_cast<std::size_t>(s)] = pat.integer_allowed[static_cast<std::size_t>(s)] ? -bound : 0;
    const ExponentVector dn = delta_exponents(n, n);
    detail::for_each_in_box(n, lo, hi, [&](const ExponentVector& e) {
      if (!is_central_monomial(e)) return true;
      bool ok = false;
      for (int k = 0; k <= bound && !ok; ++k) ok = e == dn.scaled(k);
      if (!ok) o.require(false, "central exponent " + e.to_string() + " is not a power of Delta_n");
      return ok;
    });
    return o;
  });

  run("centre.delta_basis_roundtrip", "central elements rewrite exactly in the Delta_i", [&] {
    Outcome o;
    auto g = seeded(3);
    for (int k = 0; k < 20 && o.pass; ++k) {
      const TorusElement z = rnd::central_element(g, n, 3, 2);
      o.require(delta_laurent_to_torus(n, central_to_delta_basis(z)) == z, "round trip failed for " + z.to_string());
    }
    return o;
  });

  // --- torus arithmetic --------------------------------------------------------

  run("torus.skew_commutation", "T^g T^d = q^e(g,d) T^(g+d) and T^g T^d = q^(e(g,d)-e(d,g)) T^d T^g", [&] {
    Outcome o;
    auto g = seeded(4);
    for (int k = 0; k < 300 && o.pass; ++k) {
      const ExponentVector a = rnd::int_exponent(g, n, 2), b = rnd::int_exponent(g, n, 2);
      const TorusElement ta = TorusElement::monomial(a), tb = TorusElement::monomial(b);
      o.require(ta * tb == TorusElement::monomial(a + b, RationalFunction::q_power(commutation_exponent(a, b))), "product formula at " + a.to_string());
      o.require(ta * tb == (tb * ta).scaled(RationalFunction::q_power(commutation_exponent(a, b) - commutation_exponent(b, a))), "skew commutation at " + a.to_string());
      o.require(commutation_exponent(a, b) == commutation_exponent(ctx, a, b), "closed form differs from the B-matrix sum");
    }
    return o;
  });

  run("torus.associativity", "the torus product is associative", [&] {
    Outcome o;
    auto g = seeded(5);
    for (int k = 0; k < 30 && o.pass; ++k) {
      const TorusElement a = rnd::torus_element(g, n, 3, 1), b = rnd::torus_element(g, n, 3, 1), c = rnd::torus_element(g, n, 3, 1);
      o.require((a * b) * c == a * (b * c), "non-associative triple");
    }
    return o;
  });

  // --- O_q(M_n) -------------------------------------------------------------------

  run("qmatrix.associativity", "straightened products are associative", [&] {
    Outcome o;
    auto g = seeded(6);
    const int trials = small ? 40 : 10;
    for (int k = 0; k < trials && o.pass; ++k) {
      const MatrixElement a = rnd::mq_element(g, n, 2, 2), b = rnd::mq_element(g, n, 2, 2), c = rnd::mq_element(g, n, 2, 2);
      o.require((a * b) * c == a * (b * c), "non-associative triple " + a.to_string());
    }
    return o;
  });

  run("qmatrix.qdet_central", "det_q commutes with every Y_{i,alpha}", [&] {
    Outcome o;
    std::size_t fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<std::size_t>(k);
    o.require(qdet(n).num_terms() == fact, "det_q does not have n! terms");
    o.require(commutes_with_all_generators(qdet(n)), "det_q is not central");
    return o;
  });

  run("qmatrix.sigma", "sigma fixes det_q and is multiplicative", [&] {
    Outcome o;
    o.require(sigma_automorphism(qdet(n)) == qdet(n), "sigma(det_q) != det_q");
    auto g = seeded(7);
    for (int k = 0; k < 50 && o.pass; ++k) {
      const MatrixElement a = rnd::mq_element(g, n, 2, 2), b = rnd::mq_element(g, n, 2, 2);
      o.require(sigma_automorphism(a * b) == sigma_automorphism(a) * sigma_automorphism(b), "sigma not multiplicative on " + a.to_string());
      o.require(sigma_inverse(sigma_automorphism(a)) == a, "sigma not invertible");
    }
    return o;
  });

  // --- tower ------------------------------------------------------------------------

  run("tower.relations", "the defining relations hold among the embedded generators", [&] {
    Outcome o;
    for (const auto& e : tw.verify_relations_preserved()) o.require(e.pass, e.name + ": " + e.witness);
    return o;
  });

  run("tower.table_invariant", "at step (j,beta) every generator (i,alpha) >= (j,beta) with i,alpha > 1 is T_{i,alpha}", [&] {
    Outcome o;
    for (const auto& r : tw.steps()) {
      if (r.beta > n) continue;
      for (int s = 0; s < N; ++s) {
        const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
        if (g.row > 1 && g.col > 1 && std::pair(g.row, g.col) >= std::pair(r.j, r.beta))
          o.require(tw.entry(r, g) == TorusElement::generator(n, g), "entry " + g.to_string() + " at step " + r.to_string());
      }
    }
    for (int s = 0; s < N; ++s)
      o.require(tw.entry({1, 2}, GeneratorIndex::from_slot(n, s)) == TorusElement::generator(n, GeneratorIndex::from_slot(n, s)), "bottom step is not T");
    return o;
  });

  run("tower.first_column_steps", "steps (j,1) and (j,2) carry the same generators", [&] {
    Outcome o;
    for (int j = 2; j <= n; ++j)
      for (int s = 0; s < N; ++s) {
        const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
        o.require(tw.entry({j, 1}, g) == tw.entry({j, 2}, g), "step (" + std::to_string(j) + ",1) differs at " + g.to_string());
      }
    return o;
  });

  run("tower.recursion", "the descending recursion recovers every step from its successor", [&] {
    Outcome o;
    for (const auto& e : tw.verify_recursion_consistency()) o.require(e.pass, e.name + ": " + e.witness);
    return o;
  });

  run("tower.minors_are_monomials", "each b_i embeds as the T-monomial on its wrapped diagonal", [&] {
    Outcome o;
    for (int i = 1; i <= 2 * n - 1; ++i) {
      const TorusElement img = tw.embed(b_minor(n, i));
      o.require(img == TorusElement::monomial(detail::b_monomial(n, i)), "b_" + std::to_string(i) + " embeds as " + img.to_string());
    }
    o.require(b_minor(n, 0) == MatrixElement::one(n) && b_minor(n, 2 * n) == MatrixElement::one(n), "b_0 or b_2n is not 1");
    return o;
  });

  run("tower.delta_as_ratio", "b_i b_{n+i}^{-1} is the Delta_i monomial", [&] {
    Outcome o;
    for (int i = 1; i <= n; ++i) {
      const TorusElement lower = tw.embed(b_minor(n, n + i));
      const TorusElement ratio = tw.embed(b_minor(n, i)) * torus_invert_monomial(lower);
      o.require(ratio == delta_element(n, i), "ratio for i=" + std::to_string(i) + " is " + ratio.to_string());
    }
    o.require(tw.embed(qdet(n)) == delta_element(n, n), "det_q does not embed as Delta_n");
    return o;
  });

  run("tower.step_factorizations", "det_q, b_{n-1} and b_{n+1} factor through the step (2,3) generators", [&] {
    Outcome o;
    for (const auto& e : tw.verify_step_factorizations()) o.require(e.pass, e.name + ": " + e.witness);
    return o;
  });

  run("tower.embed_homomorphism", "embed(xy) = embed(x) embed(y)", [&] {
    Outcome o;
    auto g = seeded(8);
    const int trials = small ? 40 : 8;
    for (int k = 0; k < trials && o.pass; ++k) {
      const MatrixElement a = rnd::mq_element(g, n, 2, 2), b = rnd::mq_element(g, n, 2, 2);
      o.require(tw.embed(a * b) == tw.embed(a) * tw.embed(b), "embedding not multiplicative on " + a.to_string() + " , " + b.to_string());
    }
    return o;
  });

  run("tower.rebase_roundtrip", "rebasing images of step monomials recovers them, at every step", [&] {
    Outcome o;
    auto g = seeded(9);
    const int trials = small ? 30 : 8;
    for (int k = 0; k < trials && o.pass; ++k) {
      const MatrixElement a = rnd::mq_element(g, n, 3, 3);
      o.require(tw.rebase_to_mq(tw.embed(a)) == a, "round trip failed for " + a.to_string());
    }
    for (const auto& r : tw.steps()) {
      if (!o.pass) break;
      StepElement x(n);
      for (int t = 0; t < 3; ++t) {
        ExponentVector e = rnd::nat_exponent(g, n, 2);
        for (int s = 0; s < N; ++s)
          if (tw.generators(r)[static_cast<std::size_t>(s)].is_monomial() && rnd::uniform(g, 0, 3) == 0) e[s] -= 2;
        x.add_term(e, rnd::coefficient(g));
      }
      TorusElement img(n);
      for (const auto& [e, c] : x) img += tw.monomial_image(r, e).scaled(c);
      o.require(tw.rebase(r, img) == x, "step " + r.to_string() + " round trip failed for " + x.to_string());
    }
    return o;
  });

  // --- derivations ----------------------------------------------------------------------

  run("derivations.basis", "each D_j respects every defining relation", [&] {
    Outcome o;
    for (int j = 1; j <= 2 * n - 1; ++j)
      for (const auto& e : check_derivation(basis_derivation(n, j))) o.require(e.pass, "D_" + std::to_string(j) + " breaks " + e.name);
    return o;
  });

  run("derivations.z_condition", "a {0,1} scaling is a derivation iff the 2x2 additivity condition holds", [&] {
    Outcome o;
    const std::uint64_t patterns = n <= 3 ? (std::uint64_t{1} << N) : 4096;
    auto g = seeded(10);
    for (std::uint64_t p = 0; p < patterns && o.pass; ++p) {
      const std::uint64_t bits = n <= 3 ? p : g();
      std::vector<RationalFunction> z;
      for (int s = 0; s < N; ++s) z.emplace_back(static_cast<long long>((bits >> s) & 1u));
      const bool derivation = all_pass(check_derivation(diagonal_derivation(n, z)));
      o.require(derivation == check_z_condition(n, z), "disagreement for pattern " + std::to_string(bits));
    }
    return o;
  });

  run("derivations.leibniz", "Leibniz extension is multiplicative for valid derivations", [&] {
    Outcome o;
    auto g = seeded(11);
    const int trials = small ? 15 : 4;
    for (int k = 0; k < trials && o.pass; ++k) {
      MqDerivation d = ad(rnd::mq_element(g, n, 2, 2), n) + basis_derivation(n, rnd::uniform(g, 1, 2 * n - 1));
      const MatrixElement a = rnd::mq_element(g, n, 2, 2), b = rnd::mq_element(g, n, 2, 2);
      o.require(leibniz_extend(d, a * b) == leibniz_extend(d, a) * b + a * leibniz_extend(d, b), "Leibniz fails");
    }
    return o;
  });

  run("derivations.lift_inner", "the lift of ad_x is ad of the embedded x", [&] {
    Outcome o;
    for (int s = 0; s < N; ++s) {
      const MatrixElement y = MatrixElement::generator(n, GeneratorIndex::from_slot(n, s));
      o.require(lift_to_torus(ad(y, n)) == ad(tw.embed(y), n), "lift of ad(Y" + GeneratorIndex::from_slot(n, s).to_string() + ")");
    }
    return o;
  });

  run("derivations.decompose_roundtrip", "ad_x + theta_z decomposes back to (x, z)", [&] {
    Outcome o;
    auto g = seeded(12);
    const int trials = small ? 40 : 10;
    for (int k = 0; k < trials && o.pass; ++k) {
      TorusDecomposition in{rnd::noncentral_torus_element(g, n, 3, 1), {}};
      for (int s = 0; s < N; ++s) in.z.push_back(rnd::central_element(g, n, 1, 1));
      const TorusDecomposition out = decompose_torus_derivation(recompose(n, in));
      o.require(out.x == in.x && out.z == in.z, "decomposition differs for x = " + in.x.to_string());
    }
    return o;
  });

  run("derivations.hh1_units", "D_j has coordinates e_j and zero inner part", [&] {
    Outcome o;
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const HH1Coordinates h = express_hh1(basis_derivation(n, j));
      o.require(h.inner.is_zero() && h.mu == detail::unit_mu(n, j), "D_" + std::to_string(j) + " gives inner " + h.inner.to_string());
    }
    return o;
  });

  run("derivations.hh1_inner", "inner derivations have zero coordinates", [&] {
    Outcome o;
    auto g = seeded(13);
    const std::vector<DetPoly> zero(static_cast<std::size_t>(2 * n - 1));
    for (int k = 0; k < (small ? 10 : 3) && o.pass; ++k) {
      const MatrixElement x = rnd::mq_element(g, n, 2, 2);
      const HH1Coordinates h = express_hh1(ad(x, n));
      o.require(h.mu == zero, "nonzero coordinates for ad(" + x.to_string() + ")");
      o.require(ad(h.inner, n) == ad(x, n), "inner part differs modulo the centre");
    }
    return o;
  });

  run("derivations.hh1_corpus", "ad_x + sum mu_j D_j has coordinates mu and zero residual", [&] {
    Outcome o;
    auto g = seeded(14);
    const int trials = n == 2 ? 25 : (n == 3 ? 10 : 6);
    for (int k = 0; k < trials && o.pass; ++k) {
      const MatrixElement x = rnd::mq_element(g, n, 2, 2);
      std::vector<DetPoly> mu;
      for (int j = 1; j <= 2 * n - 1; ++j) mu.push_back(rnd::det_poly(g, 1));
      const MqDerivation d = ad(x, n) + combine_basis(n, mu);
      const HH1Coordinates h = express_hh1(d);
      o.require(h.mu == mu, "coordinates differ for x = " + x.to_string());
      o.require((d - ad(h.inner, n) - combine_basis(n, h.mu)).is_zero(), "nonzero residual");
    }
    return o;
  });

  run("derivations.sl_annihilate", "the SL basis derivations kill det_q", [&] {
    Outcome o;
    for (int i : sl_indices(n)) o.require(annihilates_qdet(sl_basis_derivation(n, i)), "index " + std::to_string(i));
    o.require(!annihilates_qdet(basis_derivation(n, 1)), "D_1 unexpectedly kills det_q");
    return o;
  });

  run("derivations.sl_mu_sum", "SL coordinates satisfy sum_{j != n} mu_j - (n-2) mu_n = 0", [&] {
    Outcome o;
    for (int i : sl_indices(n)) {
      const HH1Coordinates h = express_hh1(sl_basis_derivation(n, i));
      o.require(mu_sum_constraint(n, h.mu), "index " + std::to_string(i));
    }
    return o;
  });

  run("derivations.gl_laurent", "det_q^{-1} D_1 on O_q(GL_n) has coordinate det_q^{-1} e_1", [&] {
    Outcome o;
    std::vector<DetPoly> mu(static_cast<std::size_t>(2 * n - 1));
    mu[0][-1] = RationalFunction(1);
    const GlDerivation d = combine_basis_gl(n, mu);
    const GlCoordinates h = gl_express(d);
    o.require(h.mu == mu && h.inner.is_zero(), "coordinates " + detail::poly_string(h.mu[0]));
    o.require(h.shift == 1, "cleared power " + std::to_string(h.shift));
    return o;
  });

  return rep;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r, bool timings) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const auto& c : r.checks) {
    nlohmann::ordered_json o{{"id", c.id}, {"statement", c.statement}, {"status", c.pass ? "pass" : "fail"}};
    if (!c.pass) o["witness"] = c.witness;
    if (timings) o["seconds"] = c.seconds;
    checks.push_back(o);
    passed += c.pass ? 1 : 0;
  }
  return {{"n", r.n}, {"status", r.all_pass() ? "pass" : "fail"}, {"passed", passed}, {"total", r.checks.size()}, {"checks", checks}};
}

inline std::string to_markdown(const VerificationReport& r, bool timings) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
  os << "# Verification report, n = " << r.n << "\n\n";
  os << passed << " of " << r.checks.size() << " checks pass.\n\n";
  os << (timings ? "| id | statement | status | seconds |\n|---|---|---|---|\n" : "| id | statement | status |\n|---|---|---|\n");
  for (const auto& c : r.checks) {
    os << "| `" << c.id << "` | " << c.statement << " | " << (c.pass ? "pass" : "**fail**");
    if (timings) os << " | " << c.seconds;
    os << " |\n";
  }
  bool header = false;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    if (!header) os << "\n## Failures\n\n";
    header = true;
    os << "- `" << c.id << "`: " << c.witness << "\n";
  }
  return os.str();
}

}  // namespace qmat::verify
